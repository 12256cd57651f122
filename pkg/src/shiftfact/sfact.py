"""The s-shifted factorial in all index regimes and its identity calculus.

The central object is ``(z)_{s;n} = z (z+s) (z+2s) ... (z+(n-1)s)`` which
interpolates between the power function (s=0), the rising factorial /
Pochhammer symbol (s=1) and the falling factorial (s=-1).  Negative integer
indices invert the product, ``(z)_{s;-q} = 1 / ((z-qs)(z-(q-1)s)...(z-s))``,
and complex indices t are reached through the gamma-function continuation

    (z)_{s;t} = s**t * Gamma(z/s + t) / Gamma(z/s)        (s != 0)

with principal powers throughout (so 1**t == 1).

Integer indices are always evaluated in product form, never through the
gamma ratio: the ratio has removable singularities exactly where the product
is a plain zero (e.g. (-2)_{1;3} = 0 while Gamma(-2) is a pole).
"""

from __future__ import annotations

import cmath
import enum
from dataclasses import dataclass
from fractions import Fraction

from .numkernel import (
    DomainError,
    PoleError,
    Scalar,
    as_complex,
    as_int_index,
    complex_log_gamma,
    exact_binomial,
    exact_factorial,
    is_exact,
    principal_log,
    principal_power,
)


def sf_product(z: Scalar, s: Scalar, n: int) -> Scalar:
    """(z)_{s;n} for integer n >= 0: the product z (z+s) ... (z+(n-1)s).

    Exact when z and s are exact scalars.
    """
    if n < 0:
        raise DomainError(f"sf_product needs n >= 0, got {n}")
    acc = 1
    for k in range(n):
        acc = acc * (z + k * s)
    return acc


def sf_negative(z: Scalar, s: Scalar, q: int) -> Scalar:
    """(z)_{s;-q} for integer q >= 1: 1 / ((z-qs)(z-(q-1)s)...(z-s)).

    Exact on exact inputs.  A vanishing factor z - k*s raises PoleError
    naming the offending k.
    """
    if q < 1:
        raise DomainError(f"sf_negative needs q >= 1, got {q}")
    acc = 1
    for k in range(1, q + 1):
        factor = z - k * s
        if factor == 0:
            raise PoleError(z, f"factor z - {k}*s vanishes in negative-index product")
        acc = acc * factor
    if is_exact(acc):
        return Fraction(1, 1) / acc
    return 1.0 / acc


def sf_int(z: Scalar, s: Scalar, q: int) -> Scalar:
    """(z)_{s;q} for any integer q, dispatching to the product forms."""
    if q >= 0:
        return sf_product(z, s, q)
    return sf_negative(z, s, -q)


def sf_general(z: Scalar, s: Scalar, t: Scalar) -> Scalar:
    """(z)_{s;t} for complex index t.

    Integral t (of any numeric type) is routed to the exact product form.
    s == 0 (tested exactly, no epsilon) evaluates the principal power z**t.
    Otherwise the gamma continuation s**t Gamma(z/s+t)/Gamma(z/s) is used,
    which raises PoleError when z/s (or z/s + t) sits on a gamma pole.
    """
    q = as_int_index(t)
    if q is not None:
        return sf_int(z, s, q)
    if s == 0:
        return principal_power(z, t)
    w = as_complex(z) / as_complex(s)
    t = as_complex(t)
    return cmath.exp(
        t * principal_log(s) + complex_log_gamma(w + t) - complex_log_gamma(w)
    )


def rising(z: Scalar, t: Scalar) -> Scalar:
    """Rising factorial (z)_t = (z)_{1;t}; product form for integer t."""
    q = as_int_index(t)
    if q is not None:
        return sf_int(z, 1, q)
    return sf_general(z, 1, t)


def falling(z: Scalar, t: Scalar) -> Scalar:
    """Falling factorial [z]_t = (z)_{-1;t}; product form for integer t."""
    q = as_int_index(t)
    if q is not None:
        return sf_int(z, -1, q)
    return sf_general(z, -1, t)


def binom_general(z: Scalar, k: int) -> Scalar:
    """Generalized binomial coefficient C(z, k) = [z]_k / k! for integer k.

    Zero for k < 0; exact on exact z.
    """
    if k < 0:
        return 0
    num = sf_product(z, -1, k)
    fact = exact_factorial(k)
    if is_exact(num):
        return Fraction(num, 1) / fact
    return num / fact


def delta_s_power(z: Scalar, s: Scalar, t: Scalar, p: int) -> Scalar:
    """p-fold forward s-difference of the shifted factorial in z:

        Delta_s^p (z)_{s;t} = [t]_p * s**p * (z + p*s)_{s;t-p}

    where Delta_s f(z) = f(z+s) - f(z).  p = 0 returns (z)_{s;t} itself.
    """
    if p < 0:
        raise DomainError(f"delta_s_power needs p >= 0, got {p}")
    if p == 0:
        return sf_general(z, s, t)
    coeff = falling(t, p)
    if coeff == 0:
        return 0 * coeff
    q = as_int_index(t)
    tail_index = (q - p) if q is not None else (as_complex(t) - p)
    return coeff * s**p * sf_general(z + p * s, s, tail_index)


# ---------------------------------------------------------------------------
# Generating function
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GeneratingSeries:
    """Truncated exponential generating series  sum_n (z)_{s;n} x^n / n!.

    The full series converges for |s x| < 1 to (1 - s x)^(-z/s), degenerating
    to exp(x z) at s = 0.
    """

    z: Scalar
    s: Scalar
    truncation_order: int
    coefficients: tuple

    def in_convergence_domain(self, x: Scalar) -> bool:
        if self.s == 0:
            return True
        return abs(as_complex(self.s) * as_complex(x)) < 1.0

    def evaluate(self, x: Scalar) -> Scalar:
        """Horner evaluation of the truncated series at x."""
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def limit(self, x: Scalar) -> complex:
        """The closed-form limit (1 - s x)^(-z/s), or exp(x z) when s = 0."""
        if self.s == 0:
            return cmath.exp(as_complex(x) * as_complex(self.z))
        z, s, x = as_complex(self.z), as_complex(self.s), as_complex(x)
        return principal_power(1.0 - s * x, -z / s)


def generating_series(z: Scalar, s: Scalar, order: int) -> GeneratingSeries:
    """Coefficients (z)_{s;n} / n! for n = 0..order (c_0 = 1)."""
    if order < 0:
        raise DomainError(f"generating_series needs order >= 0, got {order}")
    coeffs = []
    for n in range(order + 1):
        if n == 0:
            coeffs.append(1 if is_exact(z) and is_exact(s) else 1.0 + 0j)
            continue
        value = sf_product(z, s, n)
        fact = exact_factorial(n)
        coeffs.append(Fraction(value, 1) / fact if is_exact(value) else value / fact)
    return GeneratingSeries(z=z, s=s, truncation_order=order, coefficients=tuple(coeffs))


# ---------------------------------------------------------------------------
# Monomial expansion and connecting coefficients
# ---------------------------------------------------------------------------


def _stirling_first_unsigned_rows(n_max: int) -> list[list[int]]:
    # u(n,k): u(0,0)=1, u(n,k) = u(n-1,k-1) + (n-1) u(n-1,k)
    rows = [[1]]
    for n in range(1, n_max + 1):
        prev = rows[-1]
        row = [0] * (n + 1)
        for k in range(n + 1):
            left = prev[k - 1] if 1 <= k <= n else 0
            right = prev[k] if k <= n - 1 else 0
            row[k] = left + (n - 1) * right
        rows.append(row)
    return rows


def monomial_expansion(s: Scalar, n: int) -> list:
    """Coefficients [c_0, ..., c_n] of (z)_{s;n} = sum_k c_k z^k.

    c_k = u(n,k) * s^(n-k) with u the unsigned Stirling numbers of the first
    kind; exact for exact s.  The polynomial is monic with zeros at
    0, -s, ..., -(n-1)s.
    """
    if n < 0:
        raise DomainError(f"monomial_expansion needs n >= 0, got {n}")
    unsigned = _stirling_first_unsigned_rows(n)[n]
    return [unsigned[k] * s ** (n - k) for k in range(n + 1)]


class ConnectingKind(str, enum.Enum):
    """Families of connecting coefficients between polynomial bases."""

    STIRLING_FIRST = "stirling_first"    # [z]_n = sum_k s(n,k) z^k   (signed)
    STIRLING_SECOND = "stirling_second"  # z^n = sum_k S(n,k) [z]_k
    LAH = "lah"                          # (z)_n = sum_k L(n,k) [z]_k (signless)


@dataclass(frozen=True)
class ConnectingCoefficients:
    """Triangular integer table of basis-change coefficients up to n_max."""

    kind: ConnectingKind
    n_max: int
    rows: tuple

    def value(self, n: int, k: int) -> int:
        if n < 0 or n > self.n_max:
            raise DomainError(f"row {n} outside table (n_max={self.n_max})")
        if k < 0 or k > n:
            return 0
        return self.rows[n][k]

    def row(self, n: int) -> tuple:
        if n < 0 or n > self.n_max:
            raise DomainError(f"row {n} outside table (n_max={self.n_max})")
        return self.rows[n]


def connecting_table(kind: ConnectingKind | str, n_max: int) -> ConnectingCoefficients:
    """Exact integer tables of Stirling (first/second kind) or Lah numbers."""
    kind = ConnectingKind(kind)
    if n_max < 0:
        raise DomainError(f"connecting_table needs n_max >= 0, got {n_max}")
    rows: list[tuple] = []
    if kind is ConnectingKind.STIRLING_FIRST:
        table = [[1]]
        for n in range(1, n_max + 1):
            prev = table[-1]
            row = [0] * (n + 1)
            for k in range(n + 1):
                left = prev[k - 1] if 1 <= k <= n else 0
                right = prev[k] if k <= n - 1 else 0
                row[k] = left - (n - 1) * right
            table.append(row)
        rows = [tuple(r) for r in table]
    elif kind is ConnectingKind.STIRLING_SECOND:
        table = [[1]]
        for n in range(1, n_max + 1):
            prev = table[-1]
            row = [0] * (n + 1)
            for k in range(n + 1):
                left = prev[k - 1] if 1 <= k <= n else 0
                right = prev[k] if k <= n - 1 else 0
                row[k] = left + k * right
            table.append(row)
        rows = [tuple(r) for r in table]
    else:  # Lah: L(n,k) = C(n-1, k-1) * n! / k!
        for n in range(n_max + 1):
            if n == 0:
                rows.append((1,))
                continue
            fact_n = exact_factorial(n)
            row = [0] * (n + 1)
            for k in range(1, n + 1):
                row[k] = exact_binomial(n - 1, k - 1) * fact_n // exact_factorial(k)
            rows.append(tuple(row))
    return ConnectingCoefficients(kind=kind, n_max=n_max, rows=tuple(rows))
