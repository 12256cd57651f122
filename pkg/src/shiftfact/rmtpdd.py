"""Mellin moments of the determinant distribution for the classical unitary
(beta = 2) random-matrix ensembles.

For an ensemble with weight w(x) on domain D, the joint eigenvalue density is
C * |prod_diff(x)|^2 * prod w(x_j).  The Mellin transform of the even/odd part
of the distribution of det = x_0 ... x_{n-1} reduces to

    M{+/-}(s) = 1/2 * C * n! * det[ Phi{+/-}_{j,k}(s) ]

where Phi{+/-}_{j,k}(s) = integral over D of w(x) eps(x) |x|^(s-1) P_j(x) Q_k(x)
with monic polynomial bases P, Q (monomials here; (x-1)^j and (1+x)^k for the
Jacobi weight) and eps = 1 or sign(x).  For even weights the matrix has a
checkerboard of zeros and the determinant factors into parity blocks, each of
a shape whose closed form is a product of gamma factors.

Supported ensembles:

* hermite     w(x) = exp(-x^2)            on (-inf, inf)
* laguerre    w(x) = x^alpha exp(-x)      on [0, inf),  alpha > -1
* gegenbauer  w(x) = (1-x^2)^(lam-1/2)    on [-1, 1],   lam > -1/2
* jacobi      w(x) = (1-x)^a (1+x)^b      on [-1, 1],   a, b > -1

A Jacobi ensemble with a == b is the Gegenbauer ensemble with lam = a + 1/2
and is routed accordingly; for a != b only the s = 1 (normalization) value is
available in closed form.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import mpmath as mp
import numpy as np

from .numkernel import (
    DomainError,
    Scalar,
    as_complex,
    complex_gamma,
    exact_factorial,
    gamma_product,
    gamma_ratio,
)
from .sfact import sf_product


class UnsupportedCaseError(ValueError):
    """The requested evaluation has no closed form in this module (e.g. the
    Jacobi ensemble with a != b away from s = 1)."""


class QuadratureError(RuntimeError):
    """The quadrature oracle failed to converge to its error target."""


class EnsembleKind(str, enum.Enum):
    HERMITE = "hermite"
    LAGUERRE = "laguerre"
    GEGENBAUER = "gegenbauer"
    JACOBI = "jacobi"


@dataclass(frozen=True)
class EnsembleSpec:
    """A classical unitary ensemble: kind, weight parameters, dimension n.

    ``beta`` is carried for forward compatibility but must equal 2.
    """

    kind: EnsembleKind
    n: int
    alpha: Optional[float] = None  # laguerre
    lam: Optional[float] = None    # gegenbauer
    a: Optional[float] = None      # jacobi
    b: Optional[float] = None      # jacobi
    beta: int = 2

    def __post_init__(self):
        object.__setattr__(self, "kind", EnsembleKind(self.kind))
        if self.beta != 2:
            raise UnsupportedCaseError("only the unitary case beta = 2 is supported")
        if self.n < 1:
            raise DomainError(f"dimension n must be >= 1, got {self.n}")
        if self.kind is EnsembleKind.LAGUERRE:
            if self.alpha is None or self.alpha <= -1:
                raise DomainError("laguerre needs alpha > -1")
        elif self.kind is EnsembleKind.GEGENBAUER:
            if self.lam is None or self.lam <= -0.5:
                raise DomainError("gegenbauer needs lam > -1/2")
        elif self.kind is EnsembleKind.JACOBI:
            if self.a is None or self.b is None or self.a <= -1 or self.b <= -1:
                raise DomainError("jacobi needs a > -1 and b > -1")

    def as_gegenbauer(self) -> "EnsembleSpec":
        """The Gegenbauer ensemble identical to a symmetric Jacobi one."""
        if self.kind is not EnsembleKind.JACOBI or self.a != self.b:
            raise DomainError("only a jacobi ensemble with a == b reduces")
        return EnsembleSpec(EnsembleKind.GEGENBAUER, n=self.n, lam=self.a + 0.5)


@dataclass(frozen=True)
class MellinResult:
    """One Mellin value: variable s, parity, the value 1/2*C*n!*det, and the
    list of checkerboard block determinant values that built it."""

    s: complex
    parity: str
    value: complex
    factorization: tuple


def _parity(parity: str) -> int:
    if parity in ("+", "plus"):
        return +1
    if parity in ("-", "minus"):
        return -1
    raise DomainError(f"parity must be '+' or '-', got {parity!r}")


# ---------------------------------------------------------------------------
# Monic orthogonal polynomials: recurrence coefficients, norms, Gauss rules.
#
# p_{k+1}(x) = (x - a_k) p_k(x) - b_k p_{k-1}(x), with b_0 = integral of w;
# the squared norm of p_j is b_0 b_1 ... b_j (Gautschi's convention).
# ---------------------------------------------------------------------------


def _gamma_real(x: float) -> float:
    return math.exp(math.lgamma(x))


def recurrence_coefficients(ens: EnsembleSpec, count: int):
    """First ``count`` monic three-term recurrence coefficients (a_k, b_k)
    for the ensemble weight.  b_0 is the total weight mass."""
    kind = ens.kind
    if kind is EnsembleKind.HERMITE:
        alphas = [0.0] * count
        betas = [math.sqrt(math.pi)] + [0.5 * k for k in range(1, count)]
        return alphas, betas
    if kind is EnsembleKind.LAGUERRE:
        al = ens.alpha
        alphas = [2 * k + al + 1 for k in range(count)]
        betas = [_gamma_real(al + 1)] + [k * (k + al) for k in range(1, count)]
        return alphas, betas
    if kind is EnsembleKind.GEGENBAUER:
        a = b = ens.lam - 0.5
    else:
        a, b = ens.a, ens.b
    alphas, betas = [], []
    for k in range(count):
        if k == 0:
            alphas.append((b - a) / (a + b + 2))
        else:
            denom = (2 * k + a + b) * (2 * k + a + b + 2)
            alphas.append((b * b - a * a) / denom)
    for k in range(count):
        if k == 0:
            betas.append(
                2 ** (a + b + 1) * _gamma_real(a + 1) * _gamma_real(b + 1) / _gamma_real(a + b + 2)
            )
        elif k == 1:
            betas.append(4 * (a + 1) * (b + 1) / ((a + b + 2) ** 2 * (a + b + 3)))
        else:
            num = 4 * k * (k + a) * (k + b) * (k + a + b)
            den = (2 * k + a + b) ** 2 * ((2 * k + a + b) ** 2 - 1)
            betas.append(num / den)
    return alphas, betas


def monic_norms(ens: EnsembleSpec, count: int) -> list:
    """Squared norms nu_j = integral of w * p_j^2 for j = 0..count-1."""
    _, betas = recurrence_coefficients(ens, count)
    norms = []
    acc = 1.0
    for b in betas:
        acc *= b
        norms.append(acc)
    return norms


def monic_eval(ens: EnsembleSpec, degree: int, x):
    """Value of the degree-``degree`` monic orthogonal polynomial at x
    (vectorised over numpy arrays)."""
    xs = np.asarray(x, dtype=float)
    alphas, betas = recurrence_coefficients(ens, max(degree, 1))
    p_prev = np.zeros_like(xs)
    p = np.ones_like(xs)
    for k in range(degree):
        p, p_prev = (xs - alphas[k]) * p - (betas[k] if k else 0.0) * p_prev, p
    return p


def gauss_rule(ens: EnsembleSpec, order: int):
    """Gauss nodes and weights for the ensemble weight via Golub-Welsch
    (eigen-decomposition of the Jacobi matrix of recurrence coefficients)."""
    if order < 1:
        raise DomainError("gauss_rule needs order >= 1")
    alphas, betas = recurrence_coefficients(ens, order)
    jm = np.diag(np.asarray(alphas, dtype=float))
    off = np.sqrt(np.asarray(betas[1:order], dtype=float))
    jm += np.diag(off, 1) + np.diag(off, -1)
    nodes, vecs = np.linalg.eigh(jm)
    weights = betas[0] * vecs[0, :] ** 2
    return nodes, weights


# ---------------------------------------------------------------------------
# Matrix elements
# ---------------------------------------------------------------------------


def _require_positive_re(s) -> complex:
    s = as_complex(s)
    if s.real <= 0:
        raise DomainError(f"the defining integral needs Re(s) > 0, got s={s}")
    return s


def phi_element(ens: EnsembleSpec, j: int, k: int, s: Scalar, parity: str = "+") -> complex:
    """Closed form of the weighted moment-matrix element

        Phi_{j,k}(s) = integral w(x) eps(x) |x|^(s-1) P_j(x) Q_k(x) dx

    in the monomial basis (Jacobi: the (x-1)^j, (1+x)^k basis, only at s = 1).
    Elements with the wrong index parity vanish for even weights.
    """
    if j < 0 or k < 0:
        raise DomainError("matrix indices must be nonnegative")
    sign = _parity(parity)
    kind = ens.kind
    if kind is EnsembleKind.HERMITE:
        s = _require_positive_re(s)
        if ((-1) ** (j + k)) * sign < 0:
            return 0j
        return complex_gamma((s + j + k) / 2)
    if kind is EnsembleKind.LAGUERRE:
        s = _require_positive_re(s)
        return complex_gamma(s + ens.alpha + j + k)
    if kind is EnsembleKind.GEGENBAUER:
        s = _require_positive_re(s)
        if ((-1) ** (j + k)) * sign < 0:
            return 0j
        lam = ens.lam
        return gamma_product(
            [lam + 0.5, (s + j + k) / 2], [lam + (s + j + k + 1) / 2]
        )
    # jacobi
    if as_complex(s) != 1:
        raise UnsupportedCaseError(
            "jacobi elements are available only at s = 1 (the normalization case)"
        )
    if sign < 0:
        raise UnsupportedCaseError("jacobi elements carry no odd-parity closed form")
    a, b = ens.a, ens.b
    return (-1) ** j * 2 ** (a + b + 1 + j + k) * gamma_product(
        [a + 1 + j, b + 1 + k], [a + b + 2 + j + k]
    )


# ---------------------------------------------------------------------------
# Quadrature oracle for the element integrals
# ---------------------------------------------------------------------------

_QUAD_DPS = 30


@lru_cache(maxsize=4096)
def _halfline_power_integral(kind: str, param: float, exponent: float) -> float:
    """integral_0^D x^exponent * w0(x) dx at high precision, where w0 and the
    upper limit D are fixed by the ensemble family:

    * hermite:    w0 = exp(-x^2), D = inf
    * laguerre:   w0 = exp(-x),   D = inf
    * gegenbauer: w0 = (1-x^2)^(param-1/2), D = 1
    """
    with mp.workdps(_QUAD_DPS):
        e = mp.mpf(exponent)
        if kind == "hermite":
            f = lambda x: x**e * mp.exp(-x * x)
            interval = [0, mp.inf]
        elif kind == "laguerre":
            f = lambda x: x**e * mp.exp(-x)
            interval = [0, mp.inf]
        else:
            lam = mp.mpf(param)
            f = lambda x: x**e * (1 - x * x) ** (lam - mp.mpf(1) / 2)
            interval = [0, 1]
        value, err = mp.quad(f, interval, error=True)
        if not mp.isfinite(value) or err > mp.mpf(10) ** (-15) * (1 + abs(value)):
            raise QuadratureError(
                f"quadrature failed for {kind} exponent {exponent}: "
                f"value={value}, err={err}"
            )
        return float(value)


@lru_cache(maxsize=4096)
def _jacobi_basis_integral(a: float, b: float, j: int, k: int) -> float:
    """integral_{-1}^{1} w(x) (x-1)^j (1+x)^k dx at high precision, i.e. the
    element integral in the (x-1)^j, (1+x)^k basis; equals
    (-1)^j * integral (1-x)^(a+j) (1+x)^(b+k) dx."""
    with mp.workdps(_QUAD_DPS):
        aa = mp.mpf(a) + j
        bb = mp.mpf(b) + k
        f = lambda x: (1 - x) ** aa * (1 + x) ** bb
        value, err = mp.quad(f, [-1, 1], error=True)
        if not mp.isfinite(value) or err > mp.mpf(10) ** (-15) * (1 + abs(value)):
            raise QuadratureError(
                f"quadrature failed for jacobi basis integral (a={a}, b={b}, "
                f"j={j}, k={k}): value={value}, err={err}"
            )
        return (-1.0) ** j * float(value)


def quadrature_phi(ens: EnsembleSpec, j: int, k: int, s: float, parity: str = "+") -> float:
    """Numerical evaluation of the defining element integral (real s > 0).

    Even-weight domains are split at x = 0 (where |x|^(s-1) has its kink);
    each half-line piece is integrated adaptively at high precision, and the
    parity factor recombines the two halves.
    """
    if j < 0 or k < 0:
        raise DomainError("matrix indices must be nonnegative")
    sign = _parity(parity)
    s = float(s)
    if s <= 0:
        raise DomainError(f"quadrature oracle needs real s > 0, got {s}")
    kind = ens.kind
    if kind is EnsembleKind.HERMITE:
        base = _halfline_power_integral("hermite", 0.0, s - 1 + j + k)
        return base * (1 + sign * (-1) ** (j + k))
    if kind is EnsembleKind.LAGUERRE:
        return _halfline_power_integral("laguerre", 0.0, s + ens.alpha - 1 + j + k)
    if kind is EnsembleKind.GEGENBAUER:
        base = _halfline_power_integral("gegenbauer", ens.lam, s - 1 + j + k)
        return base * (1 + sign * (-1) ** (j + k))
    if s != 1.0:
        raise UnsupportedCaseError("jacobi oracle is defined only at s = 1")
    if sign < 0:
        raise UnsupportedCaseError("jacobi oracle carries no odd-parity case")
    return _jacobi_basis_integral(ens.a, ens.b, j, k)


# ---------------------------------------------------------------------------
# Normalization constants
# ---------------------------------------------------------------------------


def jacobi_log_norm(n: int, a: float, b: float) -> float:
    """log of the eigenvalue-integral normalization

        1/C = n! * 2^(n(n-1)+(a+b+1)n)
                 * prod_{j<n} j! Gamma(a+1+j) Gamma(b+1+j) / Gamma(a+b+n+1+j)
    """
    acc = math.lgamma(n + 1) + (n * (n - 1) + (a + b + 1) * n) * math.log(2.0)
    for j in range(n):
        acc += (
            math.lgamma(j + 1)
            + math.lgamma(a + 1 + j)
            + math.lgamma(b + 1 + j)
            - math.lgamma(a + b + n + 1 + j)
        )
    return acc


def normalization_const(ens: EnsembleSpec) -> float:
    """C such that C * |prod_diff(x)|^2 * prod w(x_j) integrates to 1:
    1/C = n! * prod_{j<n} nu_j with nu_j the monic squared norms.

    The Jacobi case uses the closed-form product of gamma factors; the other
    families use the recurrence norms.
    """
    n = ens.n
    if ens.kind is EnsembleKind.JACOBI:
        return math.exp(-jacobi_log_norm(n, ens.a, ens.b))
    norms = monic_norms(ens, n)
    log_inv = math.lgamma(n + 1)
    for nu in norms:
        log_inv += math.log(nu)
    return math.exp(-log_inv)


# ---------------------------------------------------------------------------
# Mellin transform closed forms
# ---------------------------------------------------------------------------


def _gamma_shift_block(base: complex, m: int) -> complex:
    """det[Gamma(base + j + k)]_{j,k < m} = prod_{j<m} j! Gamma(base + j)."""
    acc = 1 + 0j
    for j in range(m):
        acc *= exact_factorial(j) * complex_gamma(base + j)
    return acc


def _gamma_ratio_block(c: complex, d: complex, m: int) -> complex:
    """det[Gamma(c+j+k)/Gamma(d+j+k)]_{j,k < m}
       = prod_{j<m} j! (d-c)_j Gamma(c+j) / Gamma(d+m-1+j)."""
    acc = 1 + 0j
    for j in range(m):
        acc *= (
            exact_factorial(j)
            * as_complex(sf_product(d - c, 1, j))
            * gamma_ratio(c + j, d + m - 1 + j)
        )
    return acc


def _hermite_blocks(n: int, s: complex, parity: int):
    m_even = (n + 1) // 2
    m_odd = n // 2
    if parity > 0:
        b1 = _gamma_shift_block(s / 2, m_even)
        b2 = _gamma_shift_block(s / 2 + 1, m_odd)
        return b1 * b2, (b1, b2)
    if n % 2 == 1:
        return 0j, ()
    m = n // 2
    blk = _gamma_shift_block((s + 1) / 2, m)
    sign = -1 if m % 2 else 1
    return sign * blk * blk, (blk, blk)


def _gegenbauer_block(lam: float, c: complex, m: int) -> complex:
    """det of the even-weight block with elements
       Gamma(lam+1/2) Gamma(c+j+k) / Gamma(lam + c + 1/2 + j + k)."""
    return complex_gamma(lam + 0.5) ** m * _gamma_ratio_block(c, lam + c + 0.5, m)


def _gegenbauer_blocks(n: int, lam: float, s: complex, parity: int):
    m_even = (n + 1) // 2
    m_odd = n // 2
    if parity > 0:
        b1 = _gegenbauer_block(lam, s / 2, m_even)
        b2 = _gegenbauer_block(lam, s / 2 + 1, m_odd)
        return b1 * b2, (b1, b2)
    if n % 2 == 1:
        return 0j, ()
    m = n // 2
    blk = _gegenbauer_block(lam, (s + 1) / 2, m)
    sign = -1 if m % 2 else 1
    return sign * blk * blk, (blk, blk)


def mellin_closed(ens: EnsembleSpec, s: Scalar, parity: str = "+") -> MellinResult:
    """The Mellin value 1/2 * C * n! * det[Phi(s)] through the checkerboard
    factorization, with the block determinant values reported alongside."""
    sign = _parity(parity)
    n = ens.n
    kind = ens.kind
    if kind is EnsembleKind.JACOBI:
        if ens.a == ens.b:
            inner = mellin_closed(ens.as_gegenbauer(), s, parity)
            return MellinResult(inner.s, inner.parity, inner.value, inner.factorization)
        if as_complex(s) != 1 or sign < 0:
            raise UnsupportedCaseError(
                "jacobi with a != b has a closed form only for s = 1, parity '+'"
            )
        # det[Phi(1)] = (1/C) / n!; the independent confirmations of this
        # product run through the inverse-gamma determinant family and 2D
        # quadrature (see the verification suites).
        det = math.exp(jacobi_log_norm(n, ens.a, ens.b) - math.lgamma(n + 1))
        value = 0.5 * normalization_const(ens) * exact_factorial(n) * det
        return MellinResult(as_complex(s), "+", complex(value), (complex(det),))
    sc = _require_positive_re(s)
    if kind is EnsembleKind.HERMITE:
        det, blocks = _hermite_blocks(n, sc, sign)
    elif kind is EnsembleKind.GEGENBAUER:
        det, blocks = _gegenbauer_blocks(n, ens.lam, sc, sign)
    else:  # laguerre: no checkerboard, same value for both parities
        det = _gamma_shift_block(sc + ens.alpha, n)
        blocks = (det,)
    prefactor = 0.5 * normalization_const(ens) * exact_factorial(n)
    return MellinResult(sc, "+" if sign > 0 else "-", prefactor * det, tuple(blocks))


def integer_moment(ens: EnsembleSpec, q: int) -> float:
    """The q-th moment of the determinant distribution:

        M(q) = (1 + (-1)^q) M+(q+1) + (1 - (-1)^q) M-(q+1),

    i.e. twice the Mellin value of matching parity at s = q + 1.
    """
    if q < 0:
        raise DomainError(f"moment order must be >= 0, got {q}")
    parity = "+" if q % 2 == 0 else "-"
    value = 2 * mellin_closed(ens, q + 1, parity).value
    if abs(value.imag) > 1e-9 * max(1.0, abs(value.real)):
        raise ArithmeticError(f"moment came out non-real: {value!r}")
    return float(value.real)


def moment_table(ens: EnsembleSpec, q_max: int) -> list:
    """Moments 0..q_max as plain floats (rows for the CLI table writers)."""
    return [integer_moment(ens, q) for q in range(q_max + 1)]
