"""Finite sums of shifted factorials over an arithmetic progression.

With nodes z_k = a + k*r the quantity computed is

    S_{s;p,n}(a, r) = sum_{k=0}^{n-1} (z_k)_{s;p}       (p >= 0, n >= 1).

Three routes are provided: direct summation, a recurrence in p driven by the
binomial expansion of (z_k + r)_{s;p+1}, and telescoped closed forms for the
resonant steps r = +s and r = -s.  All three agree exactly on rational input.
"""

from __future__ import annotations

from dataclasses import dataclass

from .numkernel import DomainError, Scalar, exact_binomial
from .sfact import sf_product


@dataclass(frozen=True)
class APSumArgs:
    """Arguments of the progression sum: base a, step r, shift s, factorial
    order p >= 0, term count n >= 1."""

    a: Scalar
    r: Scalar
    s: Scalar
    p: int
    n: int

    def __post_init__(self):
        if self.p < 0:
            raise DomainError(f"factorial order p must be >= 0, got {self.p}")
        if self.n < 1:
            raise DomainError(f"term count n must be >= 1, got {self.n}")


def ap_sum_direct(args: APSumArgs) -> Scalar:
    """Term-by-term summation; exact on exact inputs.  r = 0 is legal and
    returns n * (a)_{s;p}."""
    a, r, s, p, n = args.a, args.r, args.s, args.p, args.n
    total = 0
    for k in range(n):
        total = total + sf_product(a + k * r, s, p)
    return total


def ap_sum_recurrence(args: APSumArgs) -> Scalar:
    """Evaluation through the order recurrence

        S_p = ((z_n)_{s;p+1} - (z_0)_{s;p+1}
               - sum_{l=0}^{p-1} C(p+1,l) S_l (r)_{s;p+1-l}) / ((p+1) r)

    seeded by S_0 = n.  Lower orders are memoized within the call.  The
    recurrence divides by (p+1) r, so r = 0 is rejected.
    """
    a, r, s, p, n = args.a, args.r, args.s, args.p, args.n
    if r == 0:
        raise DomainError("the order recurrence is singular at step r = 0")
    memo: list[Scalar] = [n]
    z0 = a
    zn = a + n * r
    for order in range(1, p + 1):
        acc = sf_product(zn, s, order + 1) - sf_product(z0, s, order + 1)
        for low in range(order):
            acc = acc - (
                exact_binomial(order + 1, low)
                * memo[low]
                * sf_product(r, s, order + 1 - low)
            )
        memo.append(acc / ((order + 1) * r))
    return memo[p]


def ap_sum_closed(args: APSumArgs) -> Scalar:
    """Telescoped closed forms, available only for r = s or r = -s with s != 0:

        r = +s:  ((z_{n-1})_{s;p+1} - (a - s)_{s;p+1}) / ((p+1) s)
        r = -s:  ((a)_{s;p+1} - (z_n)_{s;p+1}) / ((p+1) s)
    """
    a, r, s, p, n = args.a, args.r, args.s, args.p, args.n
    if s == 0:
        raise DomainError("closed forms need s != 0")
    if r == s:
        upper = sf_product(a + (n - 1) * s, s, p + 1)
        lower = sf_product(a - s, s, p + 1)
        return (upper - lower) / ((p + 1) * s)
    if r == -s:
        upper = sf_product(a, s, p + 1)
        lower = sf_product(a - n * s, s, p + 1)
        return (upper - lower) / ((p + 1) * s)
    raise DomainError("closed form exists only for step r = s or r = -s")
