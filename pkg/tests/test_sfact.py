import cmath
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shiftfact.numkernel import PoleError, principal_power
from shiftfact.sfact import (
    ConnectingKind,
    binom_general,
    connecting_table,
    delta_s_power,
    falling,
    generating_series,
    monomial_expansion,
    rising,
    sf_general,
    sf_int,
    sf_negative,
    sf_product,
)
from shiftfact.selftest import count_set_partitions, falling_poly, rising_poly


def rel(a, b):
    a, b = complex(a), complex(b)
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


fractions_st = st.fractions(
    min_value=-6, max_value=6, max_denominator=4
)


# --- product / negative / general regimes ----------------------------------


def test_product_examples():
    assert sf_product(7.3, -2.1, 0) == 1
    assert sf_product(1, 1, 4) == 24
    assert sf_product(-2, 1, 3) == 0
    assert sf_product(3, -1, 3) == 6


def test_negative_examples():
    assert sf_negative(3, 1, 1) == Fraction(1, 2)
    assert sf_negative(5, 1, 2) == Fraction(1, 12)
    assert sf_product(9.9, 2.2, 0) == 1  # q = 0 comes through the empty product
    with pytest.raises(PoleError):
        sf_negative(2, 1, 3)  # z - 2s = 0


def test_general_examples():
    assert sf_general(1.5 - 2j, 0.25j, 0) == 1
    assert sf_general(2.5 + 1j, 0.7, 1) == 2.5 + 1j
    assert sf_general(3, 1, 5) == sf_product(3, 1, 5) == 2520
    # integral float / complex indices are routed to the product form
    assert sf_general(-2, 1, 3.0) == 0
    assert sf_general(-2, 1, 3 + 0j) == 0


def test_general_shift_zero_dispatch():
    z, t = 1.3 + 0.4j, 0.7 - 0.2j
    assert sf_general(z, 0, t) == principal_power(z, t)


def test_rising_falling():
    assert rising(3, 2) == 12
    assert falling(3, 2) == 6
    assert falling(2, 3) == 0
    assert rising(0.5, 0.5) == pytest.approx(
        complex(math.gamma(1.0) / math.gamma(0.5)), rel=1e-13
    )


def test_binom_general():
    assert binom_general(5, 2) == 10
    assert binom_general(Fraction(1, 2), 2) == Fraction(-1, 8)
    assert binom_general(4.0 + 0j, 2) == pytest.approx(6.0)
    assert binom_general(3, -1) == 0


@given(
    z=fractions_st,
    s=fractions_st,
    q=st.integers(min_value=-6, max_value=6),
)
@settings(max_examples=150, deadline=None)
def test_sign_flip_and_reversal_exact(z, s, q):
    sign = -1 if q % 2 else 1
    try:
        lhs = sf_int(z, s, q)
    except PoleError:
        return
    try:
        assert lhs == sign * sf_int(-z, -s, q)
        assert lhs == sf_int(z + (q - 1) * s, -s, q)
    except PoleError:
        pass


@given(
    z=fractions_st,
    w=fractions_st,
    s=fractions_st,
    n=st.integers(min_value=0, max_value=10),
)
@settings(max_examples=150, deadline=None)
def test_binomial_formula_exact(z, w, s, n):
    total = sum(
        math.comb(n, k) * sf_product(z, s, k) * sf_product(w, s, n - k)
        for k in range(n + 1)
    )
    assert total == sf_product(z + w, s, n)


def test_multiplication_and_inversion_complex():
    z, s = 1.3 + 0.4j, 0.8 - 0.2j
    t, r = 0.7 + 0.3j, -0.9 + 1.1j
    assert rel(sf_general(z, s, t) * sf_general(z + t * s, s, r), sf_general(z, s, t + r)) < 1e-12
    assert abs(sf_general(z, s, t) * sf_general(z + t * s, s, -t) - 1) < 1e-12


def test_delta_power():
    z, s, t = 0.9 + 0.1j, 1.1, 2.3 - 0.5j
    assert delta_s_power(z, s, t, 0) == sf_general(z, s, t)
    assert delta_s_power(1, 1, 3, 1) == 18
    assert delta_s_power(1, 1, 2, 3) == 0
    # one application equals the explicit forward difference
    lhs = sf_general(z + s, s, t) - sf_general(z, s, t)
    assert rel(lhs, delta_s_power(z, s, t, 1)) < 1e-11


# --- generating series ------------------------------------------------------


def test_generating_series_basics():
    series = generating_series(1, 1, 40)
    assert series.coefficients[0] == 1
    assert series.in_convergence_domain(0.3)
    assert not series.in_convergence_domain(1.5)
    assert rel(series.evaluate(0.3), 1 / 0.7) < 1e-12


def test_generating_series_shift_zero_is_exp():
    series = generating_series(2.0 + 0j, 0, 16)
    x = 0.37
    assert rel(series.evaluate(x), cmath.exp(x * 2.0)) < 1e-12
    assert series.in_convergence_domain(1e9)


def test_generating_series_limit_matches_truncation():
    # z/s bounded: the truncation tail grows like N^(Re(z/s)-1) |sx|^N
    rng = random.Random(11)
    for _ in range(50):
        exponent = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        s = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        if abs(s) < 0.2:
            continue
        series = generating_series(exponent * s, s, 40)
        x = 0.5 * rng.uniform(0.05, 1.0) / abs(s) * cmath.exp(1j * rng.uniform(0, 6.28))
        assert rel(series.evaluate(x), series.limit(x)) < 1e-9


# --- monomial expansion and connecting coefficients -------------------------


def test_monomial_expansion_examples():
    assert monomial_expansion(1.0, 0) == [1.0]
    assert monomial_expansion(1, 2) == [0, 1, 1]
    assert monomial_expansion(2, 3) == [0, 8, 6, 1]
    assert monomial_expansion(0, 4) == [0, 0, 0, 0, 1]


def test_monomial_expansion_reconstructs_product():
    coeffs = monomial_expansion(Fraction(2, 3), 5)
    z = Fraction(7, 4)
    value = sum(c * z**k for k, c in enumerate(coeffs))
    assert value == sf_product(z, Fraction(2, 3), 5)
    # anchors: monic, zero constant term, stated subleading coefficients
    assert coeffs[5] == 1
    assert coeffs[0] == 0
    assert coeffs[4] == Fraction(5 * 4, 2) * Fraction(2, 3)
    assert coeffs[1] == math.factorial(4) * Fraction(2, 3) ** 4


def test_connecting_tables_rows():
    s1 = connecting_table("stirling_first", 8)
    assert s1.row(3) == (0, 2, -3, 1)
    s2 = connecting_table(ConnectingKind.STIRLING_SECOND, 8)
    assert s2.value(3, 2) == 3
    assert all(s2.value(n, n) == 1 for n in range(9))
    assert all(s2.value(n, 1) == 1 for n in range(1, 9))
    lah = connecting_table("lah", 8)
    assert lah.value(3, 2) == 6
    for n in range(1, 9):
        for k in range(1, n + 1):
            assert lah.value(n, k) == math.comb(n - 1, k - 1) * math.factorial(n) // math.factorial(k)


def test_connecting_tables_basis_identities_exact():
    n_max = 12
    s1 = connecting_table("stirling_first", n_max)
    s2 = connecting_table("stirling_second", n_max)
    lah = connecting_table("lah", n_max)
    for n in range(n_max + 1):
        assert list(s1.row(n)) == falling_poly(n)
        acc = [0] * (n + 1)
        for k in range(n + 1):
            for i, cf in enumerate(falling_poly(k)):
                acc[i] += s2.value(n, k) * cf
        assert acc == [0] * n + [1]
        acc = [0] * (n + 1)
        for k in range(n + 1):
            for i, cf in enumerate(falling_poly(k)):
                acc[i] += lah.value(n, k) * cf
        assert acc == rising_poly(n)


def test_stirling_second_against_set_partition_count():
    s2 = connecting_table("stirling_second", 8)
    for n in range(9):
        for k in range(n + 1):
            assert s2.value(n, k) == count_set_partitions(n, k)


def test_stirling_first_signed_row_sums_telescope():
    s1 = connecting_table("stirling_first", 10)
    for n in range(2, 11):
        assert sum(s1.row(n)) == 0
