import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shiftfact.detform import (
    DeterminantSpec,
    DetKind,
    IdentityViolation,
    TriangularKind,
    build_matrix,
    det_bareiss,
    det_closed,
    det_lu,
    det_oracle,
    det_oracle_mp,
    det_verify,
    prod_diff,
    result_to_doc,
    scalar_from_doc,
    scalar_to_doc,
    spec_from_doc,
    spec_to_doc,
    triangular_entry,
    triangular_residual,
)
from shiftfact.numkernel import DomainError, PoleError
from shiftfact.sfact import sf_general


def rel(a, b):
    a, b = complex(a), complex(b)
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


# --- product of differences --------------------------------------------------


def test_prod_diff_examples():
    assert prod_diff([3.7]) == 1
    assert prod_diff([0, 1, 2]) == 2
    # affine nodes b + a*j give a^(n(n-1)/2) * prod j!
    assert prod_diff([5 + 2 * j for j in range(3)]) == 2**3 * 1 * 1 * 2
    with pytest.raises(DomainError):
        prod_diff([])


@given(
    nodes=st.lists(st.fractions(min_value=-8, max_value=8, max_denominator=4), min_size=1, max_size=6),
    a=st.fractions(min_value=-4, max_value=4, max_denominator=3),
    b=st.fractions(min_value=-4, max_value=4, max_denominator=3),
)
@settings(max_examples=100, deadline=None)
def test_prod_diff_affine_and_inversion_maps(nodes, a, b):
    n = len(nodes)
    half = n * (n - 1) // 2
    delta = prod_diff(nodes)
    assert prod_diff([b + a * z for z in nodes]) == a**half * delta
    if all(z != 0 for z in nodes):
        expect = (-1) ** half * delta
        for z in nodes:
            expect /= z ** (n - 1)
        assert prod_diff([1 / z for z in nodes]) == expect
    if b != 0 and all(b + a * z != 0 for z in nodes):
        expect = b**half * delta
        for z in nodes:
            expect /= (b + a * z) ** (n - 1)
        assert prod_diff([z / (b + a * z) for z in nodes]) == expect


# --- matrices and oracles ----------------------------------------------------


def test_build_matrix_examples():
    m = build_matrix(DeterminantSpec(DetKind.SSHIFTED, s=0), [2, 3])
    assert m == [[1, 1], [2, 3]]
    m = build_matrix(DeterminantSpec(DetKind.GAMMA_SHIFT), [1.0, 2.0])
    assert rel(m[0][0], 1) < 1e-13 and rel(m[1][1], 2) < 1e-13
    m = build_matrix(DeterminantSpec(DetKind.BINOMIAL_ELEM), [3, 4])
    assert m == [[1, 1], [3, 4]]


def test_det_oracle_examples():
    assert det_oracle([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1
    assert det_oracle([[1.0, 1.0], [1.0, 2.0]]) == 1
    assert det_oracle([[0, 1], [1, 0]]) == -1
    assert det_lu([[0.0, 1.0], [0.0, 2.0]]) == 0
    assert det_bareiss([[Fraction(1, 2), 1], [1, 2]]) == 0


@given(
    entries=st.lists(st.integers(min_value=-9, max_value=9), min_size=16, max_size=16)
)
@settings(max_examples=80, deadline=None)
def test_bareiss_matches_cofactor_expansion(entries):
    m = [entries[4 * i : 4 * i + 4] for i in range(4)]

    def cofactor_det(a):
        n = len(a)
        if n == 1:
            return a[0][0]
        return sum(
            (-1) ** j * a[0][j] * cofactor_det([row[:j] + row[j + 1 :] for row in a[1:]])
            for j in range(n)
        )

    assert det_bareiss(m) == cofactor_det(m)


def test_closed_form_examples():
    assert det_closed(DeterminantSpec(DetKind.SSHIFTED, s=1.7 - 0.3j), [0, 1, 2]) == 2
    v = det_closed(DeterminantSpec(DetKind.GAMMA_SHIFT), [1.0, 2.0, 3.0])
    assert rel(v, 4.0) < 1e-12
    v = det_closed(DeterminantSpec(DetKind.TWO_SET_SYMMETRIC, s=0.9 + 0.4j, w=(0, 1)), [0, 1])
    assert rel(v, -1.0) < 1e-14
    v = det_closed(DeterminantSpec(DetKind.INV_GAMMA), [1.0, 2.0])
    assert rel(v, -0.5) < 1e-12


def _sample_nodes(rng, n, radius=4.0, sep=0.1):
    while True:
        zs = [complex(rng.uniform(-radius, radius), rng.uniform(-radius, radius)) for _ in range(n)]
        if all(abs(zs[i] - zs[j]) >= sep for i in range(n) for j in range(i + 1, n)):
            return zs


@pytest.mark.parametrize("kind", list(DetKind))
def test_each_kind_matches_oracle(kind):
    rng = random.Random(f"kind:{kind.value}")
    done = 0
    while done < 12:
        n = rng.randint(2, 6)
        nodes = _sample_nodes(rng, n)
        kwargs = {}
        s = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        if abs(s) < 0.3:
            continue
        if kind in (DetKind.RATIO_SSHIFTED, DetKind.RATIO_NEG_INDEX, DetKind.GAMMA_RATIO,
                    DetKind.BINOMIAL_RATIO, DetKind.GAMMA_RATIO_NEG):
            kwargs["a"] = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            kwargs["b"] = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
            if abs(kwargs["a"]) < 0.3:
                continue
        if kind is DetKind.SSHIFTED_COMPLEX_INDEX:
            kwargs["t"] = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        if kind is DetKind.SSHIFTED_OFFSETS:
            kwargs["offsets"] = tuple(
                complex(rng.uniform(-3, 3), rng.uniform(-3, 3)) for _ in range(n)
            )
        if kind in (DetKind.TWO_SET_SYMMETRIC, DetKind.TWO_SET_GAMMA_RATIO, DetKind.TWO_SET_BINOMIAL):
            kwargs["w"] = tuple(_sample_nodes(rng, n))
        spec = DeterminantSpec(kind, s=s, **kwargs)
        try:
            closed = det_closed(spec, nodes)
            oracle = det_oracle(build_matrix(spec, nodes))
        except PoleError:
            continue
        if oracle == 0:
            continue
        residual = rel(closed, oracle)
        if residual > 1e-9:  # sharpen ill-conditioned draws before judging
            sharp = det_oracle_mp(spec, nodes)
            residual = rel(closed, sharp)
        assert residual <= 1e-8, (kind, n, residual)
        done += 1


def test_exact_rational_equality_sample():
    rng = random.Random(17)
    spec = DeterminantSpec(
        DetKind.RATIO_SSHIFTED, s=Fraction(1, 2), a=Fraction(3, 2), b=Fraction(7, 3)
    )
    done = 0
    while done < 10:
        nodes = [Fraction(rng.randint(-12, 12), rng.randint(1, 4)) for _ in range(4)]
        if len(set(nodes)) < 4:
            continue
        try:
            closed = det_closed(spec, nodes)
            matrix = build_matrix(spec, nodes)
        except PoleError:
            continue
        assert all(isinstance(v, Fraction) for row in matrix for v in row)
        assert closed == det_oracle(matrix)
        done += 1


def test_side_conditions_are_named():
    with pytest.raises(PoleError, match="InvSShifted"):
        det_closed(DeterminantSpec(DetKind.INV_SSHIFTED, s=1.0), [0.0, 1.0, 2.5])
    with pytest.raises(PoleError, match="NegIndex"):
        det_closed(DeterminantSpec(DetKind.NEG_INDEX, s=1.0), [2.0, 0.5, 3.3])
    with pytest.raises(PoleError, match="GammaShift"):
        build_matrix(DeterminantSpec(DetKind.GAMMA_SHIFT), [-2.0, 1.0])
    with pytest.raises(DomainError):
        DeterminantSpec(DetKind.RATIO_SSHIFTED, s=1)  # a, b missing
    with pytest.raises(DomainError):
        det_closed(DeterminantSpec(DetKind.TWO_SET_SYMMETRIC, s=1, w=(1, 2)), [1, 2, 3])


def test_coincident_nodes_give_zero():
    spec = DeterminantSpec(DetKind.SSHIFTED, s=2.2)
    assert det_closed(spec, [1.5, 1.5, 2.5]) == 0
    matrix = build_matrix(spec, [1.5, 1.5, 2.5])
    assert abs(complex(det_oracle(matrix))) < 1e-9


def test_antisymmetry_under_node_swap():
    spec = DeterminantSpec(DetKind.GAMMA_SHIFT)
    nodes = [1.1 + 0.2j, 2.3 - 0.4j, 0.6 + 1.2j]
    base = det_closed(spec, nodes)
    swapped = [nodes[1], nodes[0], nodes[2]]
    assert rel(det_closed(spec, swapped), -complex(base)) < 1e-12


def test_shift_independence_at_oracle_level():
    nodes = [1.4 + 0.6j, -0.8 + 0.1j, 2.2 - 1.0j, 0.3 + 1.7j]
    target = prod_diff(nodes)
    for s in (0, 1, -1, 0.7 + 0.9j, -2.1):
        oracle = det_oracle(build_matrix(DeterminantSpec(DetKind.SSHIFTED, s=s), nodes))
        assert rel(oracle, target) < 1e-9


def test_complex_index_negative_twin():
    rng = random.Random(23)
    done = 0
    while done < 8:
        n = rng.randint(2, 5)
        nodes = [complex(rng.uniform(0.5, 3), rng.uniform(-1, 1)) for _ in range(n)]
        if any(abs(nodes[i] - nodes[j]) < 0.1 for i in range(n) for j in range(i + 1, n)):
            continue
        s = complex(rng.uniform(0.4, 1.5), rng.uniform(-0.3, 0.3))
        t = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        try:
            matrix = [[sf_general(z, s, t - i) for z in nodes] for i in range(n)]
            lhs = det_oracle(matrix)
            pref = 1 + 0j
            for z in nodes:
                pref *= complex(sf_general(z, s, t))
            rhs = pref * complex(
                det_closed(DeterminantSpec(DetKind.NEG_INDEX, s=s), [z + t * s for z in nodes])
            )
        except PoleError:
            continue
        assert rel(lhs, rhs) < 1e-8
        done += 1


# --- triangularization -------------------------------------------------------


def test_triangular_entry_examples():
    assert triangular_entry("sshifted", 2, 1, s=1.2 + 0.1j, b=0.4 - 0.9j) == 0
    assert triangular_entry("sshifted", 1, 2, s=1, b=Fraction(5, 7)) == 2
    assert triangular_entry("ratio_sshifted", 1, 1, s=1, c=Fraction(1), d=Fraction(3)) == Fraction(1, 6)


def test_triangular_entry_exact_and_complex_draws():
    rng = random.Random(31)
    for kind in TriangularKind:
        for _ in range(25):
            i, j = rng.randint(0, 6), rng.randint(0, 6)
            s = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            if abs(s) < 0.3:
                continue
            kwargs = (
                {"b": complex(rng.uniform(-3, 3), rng.uniform(-3, 3))}
                if kind in (TriangularKind.SSHIFTED, TriangularKind.INV_SSHIFTED)
                else {
                    "c": complex(rng.uniform(-3, 3), rng.uniform(-3, 3)),
                    "d": complex(rng.uniform(-3, 3), rng.uniform(-3, 3)),
                }
            )
            try:
                residual = triangular_residual(kind, i, j, s=s, **kwargs)
            except PoleError:
                continue
            assert residual <= (1e-12 if i > j else 1e-10), (kind, i, j, residual)


def test_triangular_entry_detects_violation():
    # a deliberately inconsistent call must raise, not silently return
    with pytest.raises((IdentityViolation, PoleError)):
        triangular_entry("inv_sshifted", 3, 3, s=1, b=Fraction(-3))  # b on the excluded lattice
    with pytest.raises(DomainError):
        triangular_entry("sshifted", -1, 0, s=1, b=1)


# --- serialisation -----------------------------------------------------------


def test_scalar_docs_round_trip():
    for value in (3, Fraction(-5, 4), 2.25, 1.5 - 2.5j):
        assert scalar_from_doc(json.loads(json.dumps(scalar_to_doc(value)))) == value


def test_spec_doc_round_trip():
    spec = DeterminantSpec(
        DetKind.RATIO_SSHIFTED, s=0.5 + 1j, a=2, b=Fraction(1, 3)
    )
    nodes = (1 + 2j, 0.5, Fraction(3, 4))
    doc = json.loads(json.dumps(spec_to_doc(spec, nodes)))
    assert doc["schema"] == 1
    spec2, nodes2 = spec_from_doc(doc)
    assert spec2.kind is DetKind.RATIO_SSHIFTED
    assert spec2.a == 2 and spec2.b == Fraction(1, 3)
    assert nodes2 == nodes
    with pytest.raises(DomainError):
        spec_from_doc({"schema": 99, "kind": "SShifted", "s": 1, "nodes": [1]})


def test_det_verify_and_result_doc():
    spec = DeterminantSpec(DetKind.SSHIFTED, s=1)
    result = det_verify(spec, (0, 1, 2))
    assert result.closed_form == 2 and result.oracle == 2 and result.residual == 0.0
    doc = result_to_doc(result)
    assert doc["closed_form"] == 2 and doc["oracle"] == 2 and doc["residual"] == 0.0
    only_closed = det_verify(spec, (0, 1, 2), compute_oracle=False)
    assert only_closed.oracle is None and only_closed.residual is None
