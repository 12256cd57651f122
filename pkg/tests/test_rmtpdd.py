import math

import numpy as np
import pytest

from shiftfact.detform import det_oracle
from shiftfact.numkernel import DomainError
from shiftfact.rmtpdd import (
    EnsembleKind,
    EnsembleSpec,
    UnsupportedCaseError,
    gauss_rule,
    integer_moment,
    jacobi_log_norm,
    mellin_closed,
    monic_eval,
    monic_norms,
    normalization_const,
    phi_element,
    quadrature_phi,
    recurrence_coefficients,
)


def rel(a, b):
    a, b = complex(a), complex(b)
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def test_ensemble_validation():
    with pytest.raises(UnsupportedCaseError):
        EnsembleSpec("hermite", n=2, beta=1)
    with pytest.raises(DomainError):
        EnsembleSpec("laguerre", n=2, alpha=-1.5)
    with pytest.raises(DomainError):
        EnsembleSpec("gegenbauer", n=2, lam=-0.7)
    with pytest.raises(DomainError):
        EnsembleSpec("jacobi", n=2, a=-1.0, b=0.0)
    with pytest.raises(DomainError):
        EnsembleSpec("hermite", n=0)


def test_phi_element_examples():
    herm = EnsembleSpec("hermite", n=2)
    assert phi_element(herm, 0, 1, 2.0, "+") == 0
    assert rel(phi_element(herm, 0, 0, 2.0, "+"), 1.0) < 1e-13
    lag = EnsembleSpec("laguerre", n=1, alpha=0.0)
    assert rel(phi_element(lag, 0, 0, 1.0, "+"), 1.0) < 1e-13
    # parity gate on the odd side
    assert phi_element(herm, 0, 0, 2.0, "-") == 0
    assert rel(phi_element(herm, 0, 1, 2.0, "-"), math.gamma(1.5)) < 1e-13
    with pytest.raises(DomainError):
        phi_element(herm, 0, 0, -1.0, "+")


def test_quadrature_phi_examples():
    herm = EnsembleSpec("hermite", n=1)
    assert rel(quadrature_phi(herm, 0, 0, 1.0, "+"), math.sqrt(math.pi)) < 1e-12
    assert rel(quadrature_phi(herm, 0, 0, 2.0, "+"), 1.0) < 1e-12  # integral of e^{-x^2}|x|
    legendre = EnsembleSpec("gegenbauer", n=1, lam=0.5)
    assert rel(quadrature_phi(legendre, 0, 0, 1.0, "+"), 2.0) < 1e-12
    lag = EnsembleSpec("laguerre", n=1, alpha=1.0)
    assert rel(quadrature_phi(lag, 1, 0, 1.0, "+"), 2.0) < 1e-12


@pytest.mark.parametrize(
    "ens",
    [
        EnsembleSpec("hermite", n=3),
        EnsembleSpec("laguerre", n=3, alpha=0.7),
        EnsembleSpec("gegenbauer", n=3, lam=0.8),
        EnsembleSpec("jacobi", n=3, a=1.5, b=2.5),
    ],
    ids=lambda e: e.kind.value,
)
def test_phi_element_matches_quadrature(ens):
    svals = [1.0] if ens.kind is EnsembleKind.JACOBI else [0.7, 2.0]
    parities = ["+"] if ens.kind is EnsembleKind.JACOBI else ["+", "-"]
    for s in svals:
        for j in range(6):
            for k in range(6 - j):
                for par in parities:
                    closed = phi_element(ens, j, k, s, par)
                    oracle = quadrature_phi(ens, j, k, s, par)
                    if oracle == 0:
                        assert closed == 0
                    else:
                        assert rel(closed, oracle) < 1e-8


def test_hermite_block_example():
    # even-even block of size 2 at s = 2: prod_{j<2} j! Gamma(1 + j) = 1
    res = mellin_closed(EnsembleSpec("hermite", n=3), 2.0, "+")
    assert rel(res.factorization[0], 1.0) < 1e-12


def test_checkerboard_against_full_matrix():
    for kind, kwargs in (("hermite", {}), ("gegenbauer", {"lam": 1.3})):
        for n in range(1, 7):
            ens = EnsembleSpec(kind, n=n, **kwargs)
            for s in (0.9, 2.3):
                for par in ("+", "-"):
                    full = [
                        [phi_element(ens, j, k, s, par) for k in range(n)]
                        for j in range(n)
                    ]
                    oracle = det_oracle(full)
                    res = mellin_closed(ens, s, par)
                    blocks = res.value / (0.5 * normalization_const(ens) * math.factorial(n))
                    if abs(complex(oracle)) < 1e-14:
                        assert abs(blocks) < 1e-12
                    else:
                        assert rel(oracle, blocks) < 1e-9


def test_odd_parity_vanishes_for_odd_dimension():
    for kind, kwargs in (("hermite", {}), ("gegenbauer", {"lam": 0.9})):
        for n in (1, 3, 5):
            res = mellin_closed(EnsembleSpec(kind, n=n, **kwargs), 1.3, "-")
            assert res.value == 0
            assert res.factorization == ()


def test_laguerre_same_for_both_parities():
    ens = EnsembleSpec("laguerre", n=4, alpha=1.2)
    plus = mellin_closed(ens, 1.7, "+")
    minus = mellin_closed(ens, 1.7, "-")
    assert plus.value == minus.value


def test_normalization_examples():
    assert rel(normalization_const(EnsembleSpec("hermite", n=1)), 1 / math.sqrt(math.pi)) < 1e-13
    assert rel(normalization_const(EnsembleSpec("laguerre", n=1, alpha=0.0)), 1.0) < 1e-13
    assert rel(normalization_const(EnsembleSpec("jacobi", n=1, a=0.0, b=0.0)), 0.5) < 1e-13


def test_jacobi_norm_closed_vs_recurrence_route():
    for n in range(1, 6):
        ens = EnsembleSpec("jacobi", n=n, a=1.5, b=2.5)
        closed = normalization_const(ens)
        nus = monic_norms(ens, n)
        recurrence = math.exp(-(math.lgamma(n + 1) + sum(math.log(v) for v in nus)))
        assert rel(closed, recurrence) < 1e-12


def test_jacobi_reduces_to_gegenbauer():
    jac = EnsembleSpec("jacobi", n=3, a=0.8, b=0.8)
    geg = jac.as_gegenbauer()
    assert geg.lam == pytest.approx(1.3)
    assert rel(mellin_closed(jac, 2.0, "+").value, mellin_closed(geg, 2.0, "+").value) < 1e-13
    assert rel(integer_moment(jac, 2), integer_moment(geg, 2)) < 1e-12


def test_jacobi_unsupported_cases():
    ens = EnsembleSpec("jacobi", n=2, a=1.0, b=2.0)
    with pytest.raises(UnsupportedCaseError):
        mellin_closed(ens, 2.0, "+")
    with pytest.raises(UnsupportedCaseError):
        phi_element(ens, 0, 0, 2.0, "+")
    with pytest.raises(UnsupportedCaseError):
        integer_moment(ens, 1)
    # the normalization value s = 1 works and gives exactly 1/2
    assert rel(mellin_closed(ens, 1.0, "+").value, 0.5) < 1e-12


def test_integer_moment_examples():
    assert rel(integer_moment(EnsembleSpec("hermite", n=1), 2), 0.5) < 1e-12
    assert rel(integer_moment(EnsembleSpec("laguerre", n=1, alpha=0.0), 1), 1.0) < 1e-12
    assert integer_moment(EnsembleSpec("hermite", n=3), 1) == 0
    for ens in (
        EnsembleSpec("hermite", n=4),
        EnsembleSpec("laguerre", n=4, alpha=0.7),
        EnsembleSpec("gegenbauer", n=4, lam=0.8),
        EnsembleSpec("jacobi", n=4, a=1.5, b=2.5),
    ):
        assert abs(integer_moment(ens, 0) - 1.0) < 1e-10


def test_hermite_first_moment_n2_matches_two_dim_integral():
    # E[x0 x1] over the n=2 eigenvalue density, by weight-matched quadrature
    ens = EnsembleSpec("hermite", n=2)
    nodes, weights = gauss_rule(ens, 24)
    gx, gy = np.meshgrid(nodes, nodes)
    wx, wy = np.meshgrid(weights, weights)
    direct = normalization_const(ens) * float(np.sum(wx * wy * (gx - gy) ** 2 * gx * gy))
    assert rel(integer_moment(ens, 1), direct) < 1e-12


def test_monic_norms_match_quadrature():
    for ens in (
        EnsembleSpec("hermite", n=1),
        EnsembleSpec("laguerre", n=1, alpha=0.7),
        EnsembleSpec("gegenbauer", n=1, lam=0.8),
        EnsembleSpec("jacobi", n=1, a=1.5, b=2.5),
    ):
        nus = monic_norms(ens, 6)
        nodes, weights = gauss_rule(ens, 40)
        for deg in range(6):
            vals = monic_eval(ens, deg, nodes)
            assert rel(float(np.sum(weights * vals * vals)), nus[deg]) < 1e-9


def test_recurrence_first_beta_is_weight_mass():
    _, betas = recurrence_coefficients(EnsembleSpec("hermite", n=1), 3)
    assert rel(betas[0], math.sqrt(math.pi)) < 1e-14
    _, betas = recurrence_coefficients(EnsembleSpec("laguerre", n=1, alpha=2.0), 3)
    assert rel(betas[0], math.gamma(3.0)) < 1e-13


def test_jacobi_log_norm_anchor():
    # n = 1, a = b = 0: the weight is flat on [-1, 1], total mass 2
    assert rel(math.exp(jacobi_log_norm(1, 0.0, 0.0)), 2.0) < 1e-13
