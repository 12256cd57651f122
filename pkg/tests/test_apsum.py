import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shiftfact.apsum import APSumArgs, ap_sum_closed, ap_sum_direct, ap_sum_recurrence
from shiftfact.numkernel import DomainError

fractions_st = st.fractions(min_value=-6, max_value=6, max_denominator=4)


def test_direct_examples():
    assert ap_sum_direct(APSumArgs(2.7, 0.4, -1.9, 0, 7)) == 7
    assert ap_sum_direct(APSumArgs(1, 1, 0, 1, 3)) == 6
    assert ap_sum_direct(APSumArgs(1, 1, 1, 2, 3)) == 20
    # r = 0 is legal for direct summation
    assert ap_sum_direct(APSumArgs(2, 0, 1, 2, 5)) == 5 * 2 * 3


def test_recurrence_examples():
    assert ap_sum_recurrence(APSumArgs(3.3, 0.7, -0.2, 0, 9)) == 9
    assert ap_sum_recurrence(APSumArgs(1, 1, 1, 2, 3)) == 20
    args = APSumArgs(Fraction(1, 2), Fraction(1, 3), Fraction(-2), 5, 4)
    assert ap_sum_recurrence(args) == ap_sum_direct(args)
    with pytest.raises(DomainError):
        ap_sum_recurrence(APSumArgs(1, 0, 1, 2, 3))


def test_closed_examples():
    assert ap_sum_closed(APSumArgs(1, 1, 1, 1, 3)) == 6
    assert ap_sum_closed(APSumArgs(1, 1, -1, 2, 3)) == 8
    # zero branch at order p = n + 1 for the falling-factorial case
    for n in range(1, 8):
        assert ap_sum_closed(APSumArgs(1, 1, -1, n + 1, n)) == 0
    with pytest.raises(DomainError):
        ap_sum_closed(APSumArgs(1, 2, 1, 1, 3))
    with pytest.raises(DomainError):
        ap_sum_closed(APSumArgs(1, 0, 0, 1, 3))


def test_validation():
    with pytest.raises(DomainError):
        APSumArgs(1, 1, 1, -1, 3)
    with pytest.raises(DomainError):
        APSumArgs(1, 1, 1, 0, 0)


@given(
    a=fractions_st,
    s=fractions_st,
    p=st.integers(min_value=0, max_value=8),
    n=st.integers(min_value=1, max_value=20),
    flip=st.booleans(),
)
@settings(max_examples=120, deadline=None)
def test_triple_agreement_exact(a, s, p, n, flip):
    if s == 0:
        return
    r = -s if flip else s
    args = APSumArgs(a, r, s, p, n)
    direct = ap_sum_direct(args)
    assert ap_sum_recurrence(args) == direct
    assert ap_sum_closed(args) == direct


@given(
    a=fractions_st,
    r=fractions_st,
    s=fractions_st,
    p=st.integers(min_value=0, max_value=6),
    n=st.integers(min_value=1, max_value=12),
)
@settings(max_examples=120, deadline=None)
def test_negation_symmetry_exact(a, r, s, p, n):
    lhs = ap_sum_direct(APSumArgs(-a, -r, s, p, n))
    sign = -1 if p % 2 else 1
    assert lhs == sign * ap_sum_direct(APSumArgs(a, r, -s, p, n))


def test_shift_scaling_complex():
    rng = random.Random(9)
    for _ in range(150):
        a = complex(rng.uniform(-4, 4), rng.uniform(-4, 4))
        r = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        s = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        if abs(s) < 0.2:
            continue
        p = rng.randint(0, 6)
        n = rng.randint(1, 12)
        lhs = ap_sum_direct(APSumArgs(a, r, s, p, n))
        rhs = s**p * ap_sum_direct(APSumArgs(a / s, r / s, 1, p, n))
        assert abs(lhs - rhs) <= 1e-10 * max(abs(lhs), abs(rhs), 1.0)
