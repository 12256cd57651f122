"""Seeded random verification suites for every module.

Each suite draws reproducible random instances (complex draws in discs,
resampled away from poles and excluded lattice points, plus exact rational
instances where an integer-index regime applies), evaluates both sides of
every identity or determinant family, and reports per-check maximum
residuals.  All randomness is derived from string-seeded ``random.Random``
instances, so a fixed seed reproduces the report byte for byte.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction


import mpmath as mp

from . import apsum, detform, numkernel, rmtpdd, sfact
from .detform import DeterminantSpec, DetKind, TriangularKind
from .numkernel import PoleError, as_complex, gamma_pole_distance
from .rmtpdd import EnsembleKind, EnsembleSpec
from .sfact import binom_general, falling, rising, sf_general, sf_int, sf_product

#: margin kept between random draws and any pole / excluded lattice point
POLE_MARGIN = 0.05

#: node separation floor for determinant trials
NODE_SEP = 0.1


@dataclass
class CheckResult:
    name: str
    trials: int
    max_residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tolerance


@dataclass
class SuiteReport:
    suite: str
    seed: int
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_doc(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "passed": self.passed,
            "checks": [
                {
                    "name": c.name,
                    "trials": c.trials,
                    "max_residual": f"{c.max_residual:.6e}",
                    "tolerance": f"{c.tolerance:.1e}",
                    "passed": c.passed,
                }
                for c in self.checks
            ],
        }

    def to_text(self) -> str:
        lines = [
            f"suite {self.suite}: {'PASS' if self.passed else 'FAIL'} (seed {self.seed})"
        ]
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            lines.append(
                f"  [{status}] {c.name:34s} trials={c.trials:<6d} "
                f"max_residual={c.max_residual:.3e} tol={c.tolerance:.1e}"
            )
        return "\n".join(lines)


def _rel(lhs, rhs) -> float:
    a, b = as_complex(lhs), as_complex(rhs)
    scale = max(abs(a), abs(b))
    if scale == 0.0:
        return 0.0
    return abs(a - b) / scale


def _rel_any(lhs, rhs) -> float:
    """Like _rel but also accepts mpmath scalars without double rounding."""
    scale = max(abs(lhs), abs(rhs))
    if scale == 0:
        return 0.0
    return float(abs(lhs - rhs) / scale)


def _escalated(residual_fn, threshold: float = 1e-11) -> float:
    """Evaluate ``residual_fn(convert)`` in doubles first; if alternating-sum
    cancellation pushes the residual above ``threshold``, redo the arithmetic
    at 40-digit precision so the reported value reflects the identity rather
    than summation noise.  (Genuine identity violations stay order-one at any
    precision.)"""
    residual = residual_fn(lambda v: v)
    if residual <= threshold:
        return residual
    with mp.workdps(40):
        return residual_fn(mp.mpc)


def _rng(seed: int, *tags) -> random.Random:
    return random.Random(":".join(["shiftfact", str(seed)] + [str(t) for t in tags]))


def _draw_disc(rng: random.Random, radius: float, min_abs: float = 0.0) -> complex:
    while True:
        z = complex(rng.uniform(-radius, radius), rng.uniform(-radius, radius))
        if min_abs <= abs(z) <= radius:
            return z


def _draw_fraction(rng: random.Random, span: int = 6, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def _pole_clear(*args) -> bool:
    return all(gamma_pole_distance(a) > POLE_MARGIN for a in args)


def _run(name, trial_fn, trials, tol, rng) -> CheckResult:
    worst = 0.0
    for _ in range(trials):
        worst = max(worst, trial_fn(rng))
    return CheckResult(name=name, trials=trials, max_residual=worst, tolerance=tol)


# ===========================================================================
# sfact suite (includes the scalar-kernel invariants)
# ===========================================================================


def _trial_gamma_recurrence(rng) -> float:
    while True:
        z = _draw_disc(rng, 20.0)
        if gamma_pole_distance(z) >= 0.1 and gamma_pole_distance(z + 1) >= 0.1:
            break
    g1 = numkernel.complex_gamma(z + 1)
    return abs(g1 - z * numkernel.complex_gamma(z)) / abs(g1)


def _trial_gamma_reflection(rng) -> float:
    while True:
        z = _draw_disc(rng, 10.0)
        if (
            abs(z.imag) > POLE_MARGIN
            or abs(z.real - round(z.real)) > POLE_MARGIN
        ):
            break
    lhs = numkernel.complex_gamma(z) * numkernel.complex_gamma(1 - z)
    rhs = cmath.pi / cmath.sin(cmath.pi * z)
    return _rel(lhs, rhs)


def _trial_gauss_multiplication(rng) -> float:
    k = rng.choice((2, 3))
    while True:
        z = _draw_disc(rng, 5.0)
        if _pole_clear(k * z, *[z + l / k for l in range(k)]):
            break
    lhs = numkernel.complex_gamma(k * z)
    rhs = (2 * math.pi) ** ((1 - k) / 2) * cmath.exp((k * z - 0.5) * math.log(k))
    for l in range(k):
        rhs *= numkernel.complex_gamma(z + l / k)
    return _rel(lhs, rhs)


def _trial_power_int(rng) -> float:
    w = _draw_disc(rng, 5.0, min_abs=0.1)
    p = rng.randint(-6, 6)
    lhs = numkernel.principal_power(w, p)
    rhs = 1 + 0j
    for _ in range(abs(p)):
        rhs *= w
    if p < 0:
        rhs = 1 / rhs
    return _rel(lhs, rhs)


def _check_special_values(rng) -> float:
    # (-k)_n and (k)_n against factorial-ratio / zero branches, exactly
    for k in range(11):
        for n in range(11):
            lhs = rising(-k, n)
            mirror = (-1) ** n * falling(k, n)
            want = 0 if k < n else (-1) ** n * math.factorial(k) // math.factorial(k - n)
            if lhs != mirror or lhs != want:
                return math.inf
            lhs2 = rising(k, n)
            mirror2 = (-1) ** n * falling(-k, n)
            if n == 0:
                want2 = 1
            elif k == 0:
                want2 = 0
            else:
                want2 = math.factorial(k + n - 1) // math.factorial(k - 1)
            if lhs2 != mirror2 or lhs2 != want2:
                return math.inf
    return 0.0


def _int_pair_guarded(rng, radius=5.0):
    """Complex (z, s) with |s| bounded away from zero."""
    return _draw_disc(rng, radius), _draw_disc(rng, 2.0, min_abs=0.3)


def _trial_sign_flip(rng) -> float:
    z, s = _int_pair_guarded(rng)
    q = rng.randint(-6, 6)
    sign = -1 if q % 2 else 1
    if q < 0 and any(abs(z - k * s) <= POLE_MARGIN for k in range(1, -q + 1)):
        return 0.0
    try:
        lhs = sf_int(z, s, q)
        rhs = sign * sf_int(-z, -s, q)
    except PoleError:
        return 0.0
    worst = _rel(lhs, rhs)
    zf, sf = _draw_fraction(rng), _draw_fraction(rng)
    try:
        if sf_int(zf, sf, q) != sign * sf_int(-zf, -sf, q):
            return math.inf
    except PoleError:
        pass
    return worst


def _trial_reversal(rng) -> float:
    z, s = _int_pair_guarded(rng)
    q = rng.randint(-6, 6)
    try:
        lhs = sf_int(z, s, q)
        rhs = sf_int(z + (q - 1) * s, -s, q)
    except PoleError:
        return 0.0
    worst = _rel(lhs, rhs)
    zf, sf = _draw_fraction(rng), _draw_fraction(rng)
    try:
        if sf_int(zf, sf, q) != sf_int(zf + (q - 1) * sf, -sf, q):
            return math.inf
    except PoleError:
        pass
    return worst


def _draw_gamma_args(rng, count_offsets):
    """z, s and offsets such that z/s + offset stays clear of poles."""
    while True:
        z = _draw_disc(rng, 5.0)
        s = _draw_disc(rng, 2.0, min_abs=0.3)
        offs = [_draw_disc(rng, 2.0) for _ in range(count_offsets)]
        base = z / s
        points = [base]
        acc = base
        for t in offs:
            acc = acc + t
            points.append(acc)
        if _pole_clear(*points):
            return z, s, offs


def _trial_mult_law(rng) -> float:
    z, s, (t, r) = _draw_gamma_args(rng, 2)
    lhs = sf_general(z, s, t) * sf_general(z + t * s, s, r)
    rhs = sf_general(z, s, t + r)
    return _rel(lhs, rhs)


def _trial_inversion(rng) -> float:
    z, s, (t,) = _draw_gamma_args(rng, 1)
    return _rel(sf_general(z, s, t) * sf_general(z + t * s, s, -t), 1.0)


def _trial_neg_index_forms(rng) -> float:
    z, s = _int_pair_guarded(rng)
    q = rng.randint(1, 6)
    if any(abs(z - k * s) <= POLE_MARGIN for k in range(1, q + 1)):
        return 0.0
    lhs = sf_int(z, s, -q)
    f1 = 1 / sf_product(z - q * s, s, q)
    f2 = 1 / sf_product(z - s, -s, q)
    worst = max(_rel(lhs, f1), _rel(lhs, f2))
    zf, sf = _draw_fraction(rng), _draw_fraction(rng)
    try:
        lf = sf_int(zf, sf, -q)
        if lf != 1 / sf_product(zf - q * sf, sf, q) or lf != 1 / sf_product(zf - sf, -sf, q):
            return math.inf
    except (PoleError, ZeroDivisionError):
        pass
    return worst


def _trial_binom_mult(rng) -> float:
    z = _draw_disc(rng, 5.0)
    n = rng.randint(0, 6)
    p = rng.randint(0, 6)
    lhs = binom_general(z, n) * binom_general(z - n, p)
    rhs = math.comb(n + p, n) * binom_general(z, n + p)
    worst = _rel(lhs, rhs)
    lhs2 = binom_general(z, n) * falling(n, p)
    rhs2 = falling(z, p) * binom_general(z - p, n - p)
    worst = max(worst, _rel(lhs2, rhs2))
    zf = _draw_fraction(rng)
    if binom_general(zf, n) * binom_general(zf - n, p) != math.comb(n + p, n) * binom_general(zf, n + p):
        return math.inf
    if binom_general(zf, n) * falling(n, p) != falling(zf, p) * binom_general(zf - p, n - p):
        return math.inf
    return worst


def _trial_scaling(rng) -> float:
    z = _draw_disc(rng, 5.0)
    s = _draw_disc(rng, 2.0, min_abs=0.3)
    w = _draw_disc(rng, 2.0, min_abs=0.3)
    q = rng.randint(-6, 6)
    if q < 0 and any(abs(w * z - k * s) <= POLE_MARGIN for k in range(1, -q + 1)):
        return 0.0
    try:
        lhs = sf_int(w * z, s, q)
        rhs = w**q * sf_int(z, s / w, q)
    except PoleError:
        return 0.0
    worst = _rel(lhs, rhs)
    zf, sf = _draw_fraction(rng), _draw_fraction(rng)
    wf = _draw_fraction(rng)
    if wf != 0:
        try:
            if sf_int(wf * zf, sf, q) != wf**q * sf_int(zf, sf / wf, q):
                return math.inf
        except (PoleError, ZeroDivisionError):
            pass
    return worst


def _trial_kfold(rng) -> float:
    k = rng.choice((2, 3))
    n = rng.randint(0, 4)
    z = _draw_disc(rng, 5.0)
    s = _draw_disc(rng, 2.0, min_abs=0.3)

    def residual(conv):
        zz, ss = conv(z), conv(s)
        lhs = sf_product(k * zz, ss, k * n)
        rhs = conv(complex(k)) ** (k * n)
        for l in range(k):
            rhs = rhs * sf_product(zz + Fraction(l, k) * ss, ss, n)
        return _rel_any(lhs, rhs)

    worst = _escalated(residual)
    zf, sf = _draw_fraction(rng), _draw_fraction(rng)
    exact_rhs = Fraction(k) ** (k * n)
    for l in range(k):
        exact_rhs *= sf_product(zf + Fraction(l, k) * sf, sf, n)
    if sf_product(k * zf, sf, k * n) != exact_rhs:
        return math.inf
    return worst


def _trial_inverse_decomposition(rng) -> float:
    n = rng.randint(0, 6)
    p = rng.randint(0, n) if n else 0
    z = _draw_disc(rng, 5.0)
    s = _draw_disc(rng, 2.0, min_abs=0.3)
    if any(abs(z + k * s) <= POLE_MARGIN for k in range(max(n, 1))):
        return 0.0
    lhs = 1 / sf_product(z, s, p)
    rhs = sf_product(z + (n - 1) * s, -s, n - p) / sf_product(z, s, n)
    worst = _rel(lhs, rhs)
    zf, sf = _draw_fraction(rng), _draw_fraction(rng)
    try:
        if 1 / sf_product(zf, sf, p) != sf_product(zf + (n - 1) * sf, -sf, n - p) / sf_product(zf, sf, n):
            return math.inf
    except ZeroDivisionError:
        pass
    return worst


def _trial_pascal(rng) -> float:
    z, s, (t,) = _draw_gamma_args(rng, 1)
    if not _pole_clear(z / s - 1, z / s + t - 1):
        return 0.0
    lhs = sf_general(z, s, t) - sf_general(z - s, s, t)
    rhs = t * s * sf_general(z, s, t - 1)
    scale = max(abs(as_complex(sf_general(z, s, t))), abs(as_complex(rhs)))
    if scale == 0 or abs(as_complex(lhs)) < 1e-3 * scale:
        return 0.0  # cancellation-dominated draw; resampled implicitly
    worst = _rel(lhs, rhs)
    zf, sf = _draw_fraction(rng), _draw_fraction(rng)
    q = rng.randint(0, 6)
    if sf_product(zf, sf, q) - sf_product(zf - sf, sf, q) != q * sf * (
        sf_product(zf, sf, q - 1) if q else 0
    ):
        return math.inf
    return worst


def _trial_pascal_binom(rng) -> float:
    z = _draw_disc(rng, 5.0)
    n = rng.randint(0, 8)
    lhs = binom_general(z + 1, n)
    rhs = binom_general(z, n) + binom_general(z, n - 1)
    worst = _rel(lhs, rhs)
    zf = _draw_fraction(rng)
    if binom_general(zf + 1, n) != binom_general(zf, n) + binom_general(zf, n - 1):
        return math.inf
    return worst


def _trial_delta_forms(rng) -> float:
    z, s, (t,) = _draw_gamma_args(rng, 1)
    if not _pole_clear(z / s + 1, z / s + t - 1, z / s - 1, z / s + t + 1):
        return 0.0
    f_z = sf_general(z, s, t)
    fwd = sf_general(z + s, s, t) - f_z
    rhs_fwd = t * s * sf_general(z + s, s, t - 1)
    bwd = sf_general(z - s, s, t) - f_z
    rhs_bwd = -t * s * sf_general(z, s, t - 1)
    scale = abs(as_complex(f_z))
    if scale == 0 or abs(as_complex(fwd)) < 1e-3 * scale or abs(as_complex(bwd)) < 1e-3 * scale:
        return 0.0
    return max(_rel(fwd, rhs_fwd), _rel(bwd, rhs_bwd))


def _trial_delta_iterated(rng) -> float:
    p = rng.randint(0, 4)
    z, s, (t,) = _draw_gamma_args(rng, 1)
    points = [z / s + m for m in range(p + 1)] + [z / s + t + m for m in range(p + 1)]
    if not _pole_clear(*points):
        return 0.0
    total = 0j
    scale = 0.0
    for m in range(p + 1):
        term = (-1) ** (p - m) * math.comb(p, m) * as_complex(sf_general(z + m * s, s, t))
        total += term
        scale = max(scale, abs(term))
    closed = as_complex(sfact.delta_s_power(z, s, t, p))
    if abs(closed) < 1e-3 * scale:
        return 0.0
    return abs(total - closed) / abs(closed)


def _trial_binomial(rng) -> float:
    n = rng.randint(0, 10)
    z, w = _draw_disc(rng, 5.0), _draw_disc(rng, 5.0)
    s = _draw_disc(rng, 2.0)

    def residual(conv):
        zz, ww, ss = conv(z), conv(w), conv(s)
        total = sum(
            math.comb(n, k) * sf_product(zz, ss, k) * sf_product(ww, ss, n - k)
            for k in range(n + 1)
        )
        return _rel_any(total, sf_product(zz + ww, ss, n))

    worst = _escalated(residual)
    zf, wf, sf = _draw_fraction(rng), _draw_fraction(rng), _draw_fraction(rng)
    exact = sum(
        math.comb(n, k) * sf_product(zf, sf, k) * sf_product(wf, sf, n - k)
        for k in range(n + 1)
    )
    if exact != sf_product(zf + wf, sf, n):
        return math.inf
    return worst


def _trial_vandermonde_binom(rng) -> float:
    n = rng.randint(0, 8)
    z, w = _draw_disc(rng, 5.0), _draw_disc(rng, 5.0)

    def residual(conv):
        zz, ww = conv(z), conv(w)
        total = sum(
            binom_general(zz, k) * binom_general(ww, n - k) for k in range(n + 1)
        )
        return _rel_any(total, binom_general(zz + ww, n))

    worst = _escalated(residual)
    zf, wf = _draw_fraction(rng), _draw_fraction(rng)
    if sum(binom_general(zf, k) * binom_general(wf, n - k) for k in range(n + 1)) != binom_general(zf + wf, n):
        return math.inf
    return worst


def _trial_multinomial(rng) -> float:
    n = rng.randint(0, 6)
    zs = [_draw_disc(rng, 5.0) for _ in range(3)]
    s = _draw_disc(rng, 2.0)

    def residual(conv):
        z1, z2, z3 = (conv(z) for z in zs)
        ss = conv(s)
        total = sum(
            (math.factorial(n) // (math.factorial(n1) * math.factorial(n2) * math.factorial(n - n1 - n2)))
            * sf_product(z1, ss, n1)
            * sf_product(z2, ss, n2)
            * sf_product(z3, ss, n - n1 - n2)
            for n1 in range(n + 1)
            for n2 in range(n - n1 + 1)
        )
        return _rel_any(total, sf_product(z1 + z2 + z3, ss, n))

    worst = _escalated(residual)
    zfs = [_draw_fraction(rng) for _ in range(3)]
    sf = _draw_fraction(rng)
    exact = sum(
        (math.factorial(n) // (math.factorial(n1) * math.factorial(n2) * math.factorial(n - n1 - n2)))
        * sf_product(zfs[0], sf, n1)
        * sf_product(zfs[1], sf, n2)
        * sf_product(zfs[2], sf, n - n1 - n2)
        for n1 in range(n + 1)
        for n2 in range(n - n1 + 1)
    )
    if exact != sf_product(sum(zfs), sf, n):
        return math.inf
    return worst


def _trial_difference(rng) -> float:
    n = rng.randint(0, 8)
    z, w = _draw_disc(rng, 5.0), _draw_disc(rng, 5.0)
    s = _draw_disc(rng, 2.0)

    def residual(conv):
        zz, ww, ss = conv(z), conv(w), conv(s)
        total = sum(
            (-1) ** (n - k)
            * math.comb(n, k)
            * sf_product(zz, ss, k)
            * sf_product(ww, -ss, n - k)
            for k in range(n + 1)
        )
        return _rel_any(total, sf_product(zz - ww, ss, n))

    worst = _escalated(residual)
    zf, wf, sf = _draw_fraction(rng), _draw_fraction(rng), _draw_fraction(rng)
    exact = sum(
        (-1) ** (n - k) * math.comb(n, k) * sf_product(zf, sf, k) * sf_product(wf, -sf, n - k)
        for k in range(n + 1)
    )
    if exact != sf_product(zf - wf, sf, n):
        return math.inf
    return worst


def _trial_inverse_binomial(rng) -> float:
    n = rng.randint(1, 6)
    z, w = _draw_disc(rng, 5.0), _draw_disc(rng, 5.0)
    s = _draw_disc(rng, 2.0, min_abs=0.3)
    if any(abs(z + k * s) <= POLE_MARGIN or abs(w + k * s) <= POLE_MARGIN for k in range(n)):
        return 0.0

    def residual(conv):
        zz, ww, ss = conv(z), conv(w), conv(s)
        total = sum(
            math.comb(n, k) / (sf_product(zz, ss, k) * sf_product(ww, ss, n - k))
            for k in range(n + 1)
        )
        rhs = sf_product(zz + ww + (n - 1) * ss, ss, n) / (
            sf_product(zz, ss, n) * sf_product(ww, ss, n)
        )
        return _rel_any(total, rhs)

    worst = _escalated(residual)
    zf, wf, sf = _draw_fraction(rng), _draw_fraction(rng), _draw_fraction(rng)
    try:
        exact = sum(
            Fraction(math.comb(n, k)) / (sf_product(zf, sf, k) * sf_product(wf, sf, n - k))
            for k in range(n + 1)
        )
        want = sf_product(zf + wf + (n - 1) * sf, sf, n) / (
            sf_product(zf, sf, n) * sf_product(wf, sf, n)
        )
        if exact != want:
            return math.inf
    except ZeroDivisionError:
        pass
    return worst


def _trial_ratio_sum(rng) -> float:
    n = rng.randint(1, 6)
    z, w = _draw_disc(rng, 5.0), _draw_disc(rng, 5.0)
    s = _draw_disc(rng, 2.0, min_abs=0.3)
    if any(abs(w + k * s) <= POLE_MARGIN for k in range(n)):
        return 0.0

    def residual(conv):
        zz, ww, ss = conv(z), conv(w), conv(s)
        total = sum(
            (-1) ** (n - k)
            * math.comb(n, k)
            * sf_product(zz, ss, k)
            / sf_product(ww, ss, k)
            for k in range(n + 1)
        )
        rhs = sf_product(zz - ww - (n - 1) * ss, ss, n) / sf_product(ww, ss, n)
        return _rel_any(total, rhs)

    worst = _escalated(residual)
    zf, wf, sf = _draw_fraction(rng), _draw_fraction(rng), _draw_fraction(rng)
    try:
        exact = sum(
            Fraction((-1) ** (n - k) * math.comb(n, k)) * sf_product(zf, sf, k) / sf_product(wf, sf, k)
            for k in range(n + 1)
        )
        if exact != sf_product(zf - wf - (n - 1) * sf, sf, n) / sf_product(wf, sf, n):
            return math.inf
    except ZeroDivisionError:
        pass
    return worst


def _trial_weighted_sum(rng) -> float:
    n = rng.randint(0, 6)
    p = rng.randint(0, n) if n else 0
    z, w = _draw_disc(rng, 5.0), _draw_disc(rng, 5.0)
    s = _draw_disc(rng, 2.0)

    def residual(conv):
        zz, ww, ss = conv(z), conv(w), conv(s)
        total = sum(
            math.comb(n, k)
            * falling(k, p)
            * sf_product(zz, ss, k)
            * sf_product(ww, ss, n - k)
            for k in range(n + 1)
        )
        rhs = (
            falling(n, p)
            * sf_product(zz, ss, p)
            * sf_product(zz + ww + p * ss, ss, n - p)
        )
        if rhs == 0 and total == 0:
            return 0.0
        return _rel_any(total, rhs)

    worst = _escalated(residual)
    zf, wf, sf = _draw_fraction(rng), _draw_fraction(rng), _draw_fraction(rng)
    exact = sum(
        math.comb(n, k) * falling(k, p) * sf_product(zf, sf, k) * sf_product(wf, sf, n - k)
        for k in range(n + 1)
    )
    if exact != falling(n, p) * sf_product(zf, sf, p) * sf_product(zf + wf + p * sf, sf, n - p):
        return math.inf
    return worst


def _trial_sign_convention(rng) -> float:
    z, s, (t,) = _draw_gamma_args(rng, 1)
    lhs = sf_general(z, s, t)
    rhs = (
        numkernel.principal_power(s, t)
        / numkernel.principal_power(-s, t)
        * as_complex(sf_general(-z, -s, t))
    )
    return _rel(lhs, rhs)


def _trial_reflection_reversal(rng) -> float:
    z, s, (t,) = _draw_gamma_args(rng, 1)
    u = z / s
    if (
        abs(cmath.sin(cmath.pi * u)) < 1e-3
        or abs(cmath.sin(cmath.pi * (u + t))) < 1e-3
        or not _pole_clear(-u + 1, -u - t + 1)
    ):
        return 0.0
    lhs = sf_general(z, s, t)
    rhs = (
        numkernel.principal_power(s, t)
        * cmath.sin(cmath.pi * u)
        / (numkernel.principal_power(-s, t) * cmath.sin(cmath.pi * (u + t)))
        * as_complex(sf_general(z + (t - 1) * s, -s, t))
    )
    return _rel(lhs, rhs)


def _trial_s_to_zero(rng) -> float:
    while True:
        z = _draw_disc(rng, 5.0, min_abs=0.3)
        if abs(cmath.phase(z)) < 2.6:
            break
    t = _draw_disc(rng, 2.0)
    lhs = sf_general(z, 1e-6, t)
    rhs = numkernel.principal_power(z, t)
    return _rel(lhs, rhs)


def _trial_generating_series(rng) -> float:
    # |z/s| stays bounded: the tail of the 40-term truncation scales like
    # N^(Re(z/s)-1) |s x|^N, so an unbounded exponent would defeat any
    # fixed truncation budget at |s x| = 1/2.
    exponent = _draw_disc(rng, 3.0)
    s = _draw_disc(rng, 2.0, min_abs=0.2)
    z = exponent * s
    x = 0.5 * rng.uniform(0.05, 1.0) / abs(s) * cmath.exp(1j * rng.uniform(0, 2 * math.pi))
    series = sfact.generating_series(z, s, 40)
    return _rel(series.evaluate(x), series.limit(x))


def _check_monomial_expansion(rng) -> float:
    # coefficient anchors plus full reconstruction against direct products
    for n in range(9):
        s = _draw_fraction(rng)
        coeffs = sfact.monomial_expansion(s, n)
        if coeffs[n] != 1:
            return math.inf
        if n >= 1 and coeffs[0] != 0:
            return math.inf
        if n >= 2 and coeffs[n - 1] != Fraction(n * (n - 1), 2) * s:
            return math.inf
        if n >= 1 and coeffs[1] != math.factorial(n - 1) * s ** (n - 1):
            return math.inf
        z = _draw_fraction(rng)
        value = sum(coeffs[k] * z**k for k in range(n + 1))
        if value != sf_product(z, s, n):
            return math.inf
    return 0.0


def _poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def falling_poly(n: int) -> list:
    """Exact coefficients of [z]_n = z (z-1) ... (z-n+1)."""
    poly = [1]
    for m in range(n):
        poly = _poly_mul(poly, [-m, 1])
    return poly


def rising_poly(n: int) -> list:
    """Exact coefficients of (z)_n = z (z+1) ... (z+n-1)."""
    poly = [1]
    for m in range(n):
        poly = _poly_mul(poly, [m, 1])
    return poly


def count_set_partitions(n: int, blocks: int) -> int:
    """Brute-force count of partitions of an n-element set into exactly
    ``blocks`` nonempty blocks, by enumerating restricted growth strings
    (element 0 is fixed to block 0, each later element joins an existing
    block or opens the next one)."""
    if n == 0:
        return 1 if blocks == 0 else 0
    count = 0

    def rec(pos: int, used: int):
        nonlocal count
        if pos == n:
            if used == blocks:
                count += 1
            return
        for label in range(min(used + 1, blocks)):
            rec(pos + 1, max(used, label + 1))

    rec(1, 1)
    return count


def _check_connecting_tables(rng, n_max: int = 12) -> float:
    s1 = sfact.connecting_table("stirling_first", n_max)
    s2 = sfact.connecting_table("stirling_second", n_max)
    lah = sfact.connecting_table("lah", n_max)
    for n in range(n_max + 1):
        # [z]_n = sum_k s(n,k) z^k, exactly
        if list(s1.row(n)) != falling_poly(n):
            return math.inf
        # z^n = sum_k S(n,k) [z]_k, exactly
        acc = [0] * (n + 1)
        for k in range(n + 1):
            fp = falling_poly(k)
            for i, cf in enumerate(fp):
                acc[i] += s2.value(n, k) * cf
        if acc != [0] * n + [1]:
            return math.inf
        # (z)_n = sum_k L(n,k) [z]_k, exactly
        acc = [0] * (n + 1)
        for k in range(n + 1):
            fp = falling_poly(k)
            for i, cf in enumerate(fp):
                acc[i] += lah.value(n, k) * cf
        if acc != rising_poly(n):
            return math.inf
        # signed row sums telescope to [1]_n
        if sum(s1.row(n)) != sf_product(1, -1, n):
            return math.inf
    # second kind against the brute-force set-partition counter
    for n in range(9):
        for k in range(n + 1):
            if s2.value(n, k) != count_set_partitions(n, k):
                return math.inf
    # Lah closed form anchor
    if lah.value(3, 2) != 6:
        return math.inf
    return 0.0


_SFACT_CHECKS = [
    ("gamma_recurrence", _trial_gamma_recurrence, 1e-12),
    ("gamma_reflection", _trial_gamma_reflection, 1e-11),
    ("gauss_multiplication", _trial_gauss_multiplication, 1e-10),
    ("power_int", _trial_power_int, 1e-13),
    ("sign_flip", _trial_sign_flip, 1e-10),
    ("reversal", _trial_reversal, 1e-10),
    ("mult_law", _trial_mult_law, 1e-10),
    ("inversion", _trial_inversion, 1e-10),
    ("neg_index_forms", _trial_neg_index_forms, 1e-10),
    ("binom_mult_law", _trial_binom_mult, 1e-10),
    ("scaling", _trial_scaling, 1e-10),
    ("kfold_law", _trial_kfold, 1e-10),
    ("inverse_decomposition", _trial_inverse_decomposition, 1e-10),
    ("pascal", _trial_pascal, 1e-10),
    ("pascal_binomial", _trial_pascal_binom, 1e-10),
    ("difference_operator", _trial_delta_forms, 1e-10),
    ("difference_iterated", _trial_delta_iterated, 1e-10),
    ("binomial", _trial_binomial, 1e-10),
    ("binomial_coefficient_sum", _trial_vandermonde_binom, 1e-10),
    ("multinomial", _trial_multinomial, 1e-10),
    ("difference_binomial", _trial_difference, 1e-10),
    ("inverse_binomial", _trial_inverse_binomial, 1e-10),
    ("ratio_sum", _trial_ratio_sum, 1e-10),
    ("weighted_sum", _trial_weighted_sum, 1e-10),
    ("sign_convention", _trial_sign_convention, 1e-10),
    ("reflection_reversal", _trial_reflection_reversal, 1e-10),
    ("shift_to_zero_continuity", _trial_s_to_zero, 1e-4),
    ("generating_series", _trial_generating_series, 1e-9),
]


def run_sfact_suite(trials: int = 200, seed: int = 0) -> SuiteReport:
    report = SuiteReport(suite="sfact", seed=seed)
    for name, fn, tol in _SFACT_CHECKS:
        rng = _rng(seed, "sfact", name)
        count = 50 if name == "generating_series" else trials
        report.checks.append(_run(name, fn, count, tol, rng))
    rng = _rng(seed, "sfact", "special_values")
    report.checks.append(
        CheckResult("special_values", 1, _check_special_values(rng), 0.0)
    )
    rng = _rng(seed, "sfact", "monomial_expansion")
    report.checks.append(
        CheckResult("monomial_expansion", 1, _check_monomial_expansion(rng), 0.0)
    )
    rng = _rng(seed, "sfact", "connecting_tables")
    report.checks.append(
        CheckResult("connecting_tables", 1, _check_connecting_tables(rng), 0.0)
    )
    return report


# ===========================================================================
# detform suite
# ===========================================================================


def _sample_nodes(rng, n, radius=4.0, sep=NODE_SEP):
    while True:
        zs = [_draw_disc(rng, radius) for _ in range(n)]
        if all(abs(zs[i] - zs[j]) >= sep for i in range(n) for j in range(i + 1, n)):
            return zs


def _margin_ok(spec: DeterminantSpec, nodes, margin=POLE_MARGIN) -> bool:
    """Sampling guard: every excluded lattice point / gamma pole relevant to
    the spec kind stays at least ``margin`` away, and small prefactor zeros
    are avoided so oracle comparisons stay well scaled."""
    kind, s, n = spec.kind, spec.s, len(nodes)
    a, b, t = spec.a, spec.b, spec.t

    def clear(v, pts):
        return all(abs(v - p) > margin for p in pts)

    if kind is DetKind.INV_SSHIFTED:
        pts = [-k * s for k in range(max(n - 1, 1))]
        return all(clear(z, pts) for z in nodes)
    if kind is DetKind.RATIO_SSHIFTED:
        pts = [-k * s for k in range(max(n - 1, 1))]
        if not all(clear(a * z + b, pts) for z in nodes):
            return False
        return all(
            abs(b + (n - 1 - j) * (1 - a) * s + k * s) > margin
            for j in range(n)
            for k in range(j)
        )
    if kind is DetKind.NEG_INDEX:
        pts = [k * s for k in range(1, n)]
        return all(clear(z, pts) for z in nodes)
    if kind is DetKind.RATIO_NEG_INDEX:
        pts = [k * s for k in range(1, n)]
        if not all(clear(a * z + b, pts) for z in nodes):
            return False
        return all(
            abs(b + s + (n - j) * (a - 1) * s - k * s) > margin
            for j in range(n)
            for k in range(1, j + 1)
        )
    if kind is DetKind.SSHIFTED_COMPLEX_INDEX:
        for z in nodes:
            base = z / s
            if gamma_pole_distance(base) <= margin:
                return False
            for i in range(n):
                if gamma_pole_distance(base + t + i) <= margin:
                    return False
        return True
    if kind is DetKind.GAMMA_SHIFT:
        return all(gamma_pole_distance(z) > margin for z in nodes)
    if kind is DetKind.INV_GAMMA:
        return all(gamma_pole_distance(z + n - 1) > margin for z in nodes)
    if kind is DetKind.INV_BINOMIAL:
        pts = list(range(max(n - 1, 1)))
        return all(clear(z, pts) for z in nodes)
    if kind is DetKind.GAMMA_RATIO:
        if not all(gamma_pole_distance(z) > margin for z in nodes):
            return False
        if not all(gamma_pole_distance(a * z + b) > margin for z in nodes):
            return False
        return all(
            abs(b + (n - 1 - j) * (1 - a) + k) > margin for j in range(n) for k in range(j)
        )
    if kind is DetKind.BINOMIAL_RATIO:
        pts = list(range(max(n - 1, 1)))
        if not all(clear(a * z + b, pts) for z in nodes):
            return False
        return all(
            abs(b - (n - 1 - j) * (1 - a) - k) > margin for j in range(n) for k in range(j)
        )
    if kind is DetKind.GAMMA_NEG_SHIFT:
        return all(
            gamma_pole_distance(z - i) > margin for z in nodes for i in range(n)
        )
    if kind is DetKind.INV_GAMMA_NEG:
        return all(gamma_pole_distance(z) > margin for z in nodes)
    if kind is DetKind.GAMMA_RATIO_NEG:
        for z in nodes:
            if any(gamma_pole_distance(a * z + b - i) <= margin for i in range(n)):
                return False
            if any(gamma_pole_distance(z - i) <= margin for i in range(n)):
                return False
        return all(
            abs(b + 1 + (n - j) * (a - 1) - j + k) > margin
            for j in range(n)
            for k in range(j)
        )
    if kind is DetKind.TWO_SET_GAMMA_RATIO:
        return all(
            gamma_pole_distance(z + w) > margin for z in nodes for w in spec.w
        )
    return True


def _sample_spec(kind: DetKind, n: int, rng) -> tuple:
    while True:
        nodes = _sample_nodes(rng, n)
        s = _draw_disc(rng, 2.0, min_abs=0.3)
        kwargs = {}
        if kind in (
            DetKind.RATIO_SSHIFTED,
            DetKind.RATIO_NEG_INDEX,
            DetKind.GAMMA_RATIO,
            DetKind.BINOMIAL_RATIO,
            DetKind.GAMMA_RATIO_NEG,
        ):
            kwargs["a"] = _draw_disc(rng, 2.0, min_abs=0.3)
            kwargs["b"] = _draw_disc(rng, 3.0)
        if kind is DetKind.SSHIFTED_COMPLEX_INDEX:
            kwargs["t"] = _draw_disc(rng, 2.0)
        if kind is DetKind.SSHIFTED_OFFSETS:
            kwargs["offsets"] = tuple(_draw_disc(rng, 3.0) for _ in range(n))
        if kind in detform.TWO_SET_KINDS:
            kwargs["w"] = tuple(_sample_nodes(rng, n))
        spec = DeterminantSpec(kind, s=s, **kwargs)
        if _margin_ok(spec, nodes):
            return spec, nodes


#: double-LU residual above which the oracle is recomputed at high precision
ESCALATE_AT = 1e-9


def _oracle_residual(spec: DeterminantSpec, nodes) -> float:
    closed = detform.det_closed(spec, nodes)
    oracle = detform.det_oracle(detform.build_matrix(spec, nodes))
    if oracle == 0:
        return math.inf
    residual = abs(as_complex(closed) - as_complex(oracle)) / abs(as_complex(oracle))
    if residual > ESCALATE_AT:
        sharp = detform.det_oracle_mp(spec, nodes)
        residual = abs(as_complex(closed) - sharp) / abs(sharp)
    return residual


def _check_kind_oracle(kind: DetKind, trials: int, seed: int) -> CheckResult:
    worst = 0.0
    total = 0
    for n in range(2, 9):
        for trial in range(trials):
            rng = _rng(seed, "detform", kind.value, n, trial)
            spec, nodes = _sample_spec(kind, n, rng)
            try:
                worst = max(worst, _oracle_residual(spec, nodes))
            except PoleError:
                continue
            total += 1
    return CheckResult(
        name=f"oracle:{kind.value}", trials=total, max_residual=worst, tolerance=1e-8
    )


_EXACT_DET_KINDS = (
    DetKind.SSHIFTED,
    DetKind.SSHIFTED_OFFSETS,
    DetKind.INV_SSHIFTED,
    DetKind.RATIO_SSHIFTED,
    DetKind.NEG_INDEX,
    DetKind.INV_NEG_INDEX,
    DetKind.RATIO_NEG_INDEX,
    DetKind.TWO_SET_SYMMETRIC,
    DetKind.BINOMIAL_ELEM,
)


def _check_exact_dets(trials: int, seed: int) -> CheckResult:
    rng = _rng(seed, "detform", "exact")
    worst = 0.0
    total = 0
    per_case = max(3, trials // 20)
    for kind in _EXACT_DET_KINDS:
        for n in range(1, 7):
            done = 0
            attempts = 0
            while done < per_case and attempts < 200:
                attempts += 1
                if kind is DetKind.BINOMIAL_ELEM:
                    nodes = [Fraction(rng.randint(-9, 9)) for _ in range(n)]
                else:
                    nodes = [_draw_fraction(rng, span=8) for _ in range(n)]
                if len(set(nodes)) < n:
                    continue
                s = _draw_fraction(rng)
                kwargs = {}
                if kind in (DetKind.RATIO_SSHIFTED, DetKind.RATIO_NEG_INDEX):
                    kwargs["a"] = _draw_fraction(rng)
                    kwargs["b"] = _draw_fraction(rng)
                    if kwargs["a"] == 0:
                        continue
                if kind is DetKind.SSHIFTED_OFFSETS:
                    kwargs["offsets"] = tuple(_draw_fraction(rng) for _ in range(n))
                if kind is DetKind.TWO_SET_SYMMETRIC:
                    ws = [_draw_fraction(rng, span=8) for _ in range(n)]
                    if len(set(ws)) < n:
                        continue
                    kwargs["w"] = tuple(ws)
                spec = DeterminantSpec(kind, s=s, **kwargs)
                try:
                    closed = detform.det_closed(spec, nodes)
                    oracle = detform.det_oracle(detform.build_matrix(spec, nodes))
                except PoleError:
                    continue
                if closed != oracle:
                    worst = math.inf
                done += 1
                total += 1
    return CheckResult("exact_rational_equality", total, worst, 0.0)


def _check_triangular(trials: int, seed: int) -> list:
    """Two results: agreement on the generic branch (i <= j, relative) and the
    vanishing branch (i > j, scaled absolute)."""
    worst_match = 0.0
    worst_vanish = 0.0
    total = 0
    for kind in TriangularKind:
        rng = _rng(seed, "detform", "triangular", kind.value)
        draws = 0
        while draws < trials:
            i = rng.randint(0, 6)
            j = rng.randint(0, 6)
            s = _draw_disc(rng, 2.0, min_abs=0.3)
            kwargs = {}
            if kind in (TriangularKind.SSHIFTED, TriangularKind.INV_SSHIFTED):
                kwargs["b"] = _draw_disc(rng, 3.0)
            else:
                kwargs["c"] = _draw_disc(rng, 3.0)
                kwargs["d"] = _draw_disc(rng, 3.0)
            try:
                res = detform.triangular_residual(kind, i, j, s=s, **kwargs)
            except PoleError:
                continue
            if i > j:
                worst_vanish = max(worst_vanish, res)
            else:
                worst_match = max(worst_match, res)
            draws += 1
            total += 1
        # exact rational instances must match exactly (residual 0.0 or inf)
        exact_draws = 0
        while exact_draws < max(5, trials // 10):
            i = rng.randint(0, 5)
            j = rng.randint(0, 5)
            s = _draw_fraction(rng)
            if s == 0:
                continue
            kwargs = {}
            if kind in (TriangularKind.SSHIFTED, TriangularKind.INV_SSHIFTED):
                kwargs["b"] = _draw_fraction(rng)
            else:
                kwargs["c"] = _draw_fraction(rng)
                kwargs["d"] = _draw_fraction(rng)
            try:
                res = detform.triangular_residual(kind, i, j, s=s, **kwargs)
            except PoleError:
                continue
            worst_match = max(worst_match, res)
            exact_draws += 1
            total += 1
    return [
        CheckResult("triangularization_match", total, worst_match, 1e-10),
        CheckResult("triangularization_vanish", total, worst_vanish, 1e-12),
    ]


def _check_s_independence(trials: int, seed: int) -> CheckResult:
    rng = _rng(seed, "detform", "s_independence")
    worst = 0.0
    for _ in range(max(trials // 4, 10)):
        n = rng.randint(2, 6)
        nodes = _sample_nodes(rng, n)
        target = detform.prod_diff(nodes)
        for _ in range(5):
            s = _draw_disc(rng, 2.0)
            oracle = detform.det_oracle(
                detform.build_matrix(DeterminantSpec(DetKind.SSHIFTED, s=s), nodes)
            )
            worst = max(worst, _rel(oracle, target))
    return CheckResult("shift_independence", max(trials // 4, 10) * 5, worst, 1e-9)


def _check_antisymmetry(trials: int, seed: int) -> CheckResult:
    rng = _rng(seed, "detform", "antisymmetry")
    single_set = [k for k in DetKind if k not in detform.TWO_SET_KINDS]
    worst = 0.0
    total = 0
    for kind in single_set:
        done = 0
        while done < max(3, trials // 30):
            n = rng.randint(2, 5)
            spec, nodes = _sample_spec(kind, n, rng)
            try:
                base = detform.det_closed(spec, nodes)
            except PoleError:
                continue
            i, j = rng.sample(range(n), 2)
            swapped = list(nodes)
            swapped[i], swapped[j] = swapped[j], swapped[i]
            try:
                flipped = detform.det_closed(spec, swapped)
            except PoleError:
                continue
            worst = max(worst, _rel(flipped, -as_complex(base)))
            done += 1
            total += 1
    return CheckResult("antisymmetry", total, worst, 1e-9)


def _check_coincident(trials: int, seed: int) -> CheckResult:
    rng = _rng(seed, "detform", "coincident")
    worst = 0.0
    total = 0
    for kind in (DetKind.SSHIFTED, DetKind.GAMMA_SHIFT, DetKind.INV_SSHIFTED,
                 DetKind.BINOMIAL_ELEM):
        for _ in range(max(5, trials // 20)):
            n = rng.randint(2, 6)
            spec, nodes = _sample_spec(kind, n, rng)
            nodes = list(nodes)
            nodes[-1] = nodes[0]  # exact duplicate
            try:
                closed = detform.det_closed(spec, nodes)
                matrix = detform.build_matrix(spec, nodes)
            except PoleError:
                continue
            if as_complex(closed) != 0:
                worst = math.inf
                continue
            scale = max(abs(as_complex(v)) for row in matrix for v in row)
            oracle = abs(as_complex(detform.det_oracle(matrix)))
            if scale > 0:
                worst = max(worst, oracle / scale**n)
            total += 1
    return CheckResult("coincident_nodes", total, worst, 1e-9)


def _check_alternant_scaling(trials: int, seed: int) -> CheckResult:
    rng = _rng(seed, "detform", "alternant")
    worst = 0.0
    total = 0
    for _ in range(max(10, trials // 5)):
        n = rng.randint(2, 5)
        nodes = _sample_nodes(rng, n)
        s = _draw_disc(rng, 2.0)
        coeff = [
            [
                (1 if i == k else 0)
                + (0.3 * _draw_disc(rng, 1.0) if k >= i else 0.3 * _draw_disc(rng, 1.0))
                for k in range(n)
            ]
            for i in range(n)
        ]
        lam = detform.det_oracle(coeff)
        if abs(lam) < 1e-3:
            continue
        matrix = [
            [
                sum(coeff[i][k] * as_complex(sf_product(z, s, k)) for k in range(n))
                for z in nodes
            ]
            for i in range(n)
        ]
        lhs = detform.det_oracle(matrix)
        rhs = lam * as_complex(detform.prod_diff(nodes))
        worst = max(worst, _rel(lhs, rhs))
        total += 1
    return CheckResult("alternant_scaling", total, worst, 1e-8)


def _check_rearrangements(trials: int, seed: int) -> CheckResult:
    rng = _rng(seed, "detform", "rearrangement")
    worst = 0.0
    total = 0
    for _ in range(trials):
        n = rng.randint(1, 8)
        s = _draw_disc(rng, 2.0, min_abs=0.2)
        b = _draw_disc(rng, 3.0)
        lhs = 1 + 0j
        rhs = 1 + 0j
        for j in range(n):
            lhs *= as_complex(sf_product(b + (j - 1) * s, s, j)) * as_complex(
                sf_product(b + j * s, s, j)
            )
            rhs *= as_complex(sf_product(b + j * s, s, n - 1))
        worst = max(worst, _rel(lhs, rhs))
        a = _draw_disc(rng, 2.0)
        lhs2 = 1 + 0j
        rhs2 = 1 + 0j
        for j in range(n):
            lhs2 *= as_complex(sf_product(b + (n - 1 - j) * (1 - a) * s, s, j))
            rhs2 *= as_complex(sf_product(b + (n - 1 - j) * s, (1 - a) * s, j))
        worst = max(worst, _rel(lhs2, rhs2))
        total += 1
    return CheckResult("factor_rearrangements", total, worst, 1e-10)


def _check_prod_diff_maps(trials: int, seed: int) -> CheckResult:
    rng = _rng(seed, "detform", "prod_diff_maps")
    worst = 0.0
    total = 0
    for _ in range(trials):
        n = rng.randint(1, 6)
        nodes = [_draw_fraction(rng, span=8) for _ in range(n)]
        if len(set(nodes)) < n:
            continue
        a = _draw_fraction(rng)
        b = _draw_fraction(rng)
        delta = detform.prod_diff(nodes)
        half = n * (n - 1) // 2
        # affine map
        if detform.prod_diff([b + a * z for z in nodes]) != a**half * delta:
            worst = math.inf
        # inversion map
        if all(z != 0 for z in nodes):
            expect = (-1) ** half * delta
            for z in nodes:
                expect = expect / z ** (n - 1)
            if detform.prod_diff([1 / z for z in nodes]) != expect:
                worst = math.inf
        # Moebius-type map z -> z / (b + a z)
        if b != 0 and all(b + a * z != 0 for z in nodes):
            expect = b**half * delta
            for z in nodes:
                expect = expect / (b + a * z) ** (n - 1)
            if detform.prod_diff([z / (b + a * z) for z in nodes]) != expect:
                worst = math.inf
        # affine integer-node factorial form
        if a != 0:
            affine = [b + a * j for j in range(n)]
            expect = a**half
            for j in range(n):
                expect *= math.factorial(j)
            if detform.prod_diff(affine) != expect:
                worst = math.inf
        total += 1
    return CheckResult("prod_diff_maps", total, worst if worst else 0.0, 0.0)


def _check_power_cases(trials: int, seed: int) -> CheckResult:
    """Shift-zero special cases: the classical Vandermonde family."""
    rng = _rng(seed, "detform", "power_cases")
    worst = 0.0
    total = 0
    for _ in range(max(10, trials // 5)):
        n = rng.randint(2, 6)
        nodes = _sample_nodes(rng, n, radius=3.0)
        if any(abs(z) < 0.2 for z in nodes):
            continue
        for kind, kwargs in (
            (DetKind.SSHIFTED, {}),
            (DetKind.SSHIFTED_OFFSETS, {"offsets": tuple(_draw_disc(rng, 2.0) for _ in range(n))}),
            (DetKind.INV_SSHIFTED, {}),
            (DetKind.RATIO_SSHIFTED, {"a": _draw_disc(rng, 2.0, min_abs=0.3), "b": _draw_disc(rng, 3.0, min_abs=0.5)}),
        ):
            spec = DeterminantSpec(kind, s=0, **kwargs)
            if not _margin_ok(spec, nodes):
                continue
            try:
                worst = max(worst, _oracle_residual(spec, nodes))
            except PoleError:
                continue
            total += 1
    return CheckResult("power_function_cases", total, worst, 1e-8)


def _check_mapped_alternant(trials: int, seed: int) -> CheckResult:
    """Alternant over the mapped monomials (z/(az+b))^k with a coefficient
    matrix of determinant lam:
        det[sum_k c_{ik} (z_j/(a z_j + b))^k]
          = lam * b^(n(n-1)/2) / prod_j (a z_j + b)^(n-1) * prod_diff(z)."""
    rng = _rng(seed, "detform", "mapped_alternant")
    worst = 0.0
    total = 0
    while total < max(10, trials // 5):
        n = rng.randint(2, 5)
        nodes = _sample_nodes(rng, n, radius=3.0)
        a = _draw_disc(rng, 2.0, min_abs=0.3)
        b = _draw_disc(rng, 3.0, min_abs=0.5)
        if any(abs(a * z + b) < 0.2 for z in nodes):
            continue
        coeff = [[_draw_disc(rng, 1.0) for _ in range(n)] for _ in range(n)]
        lam = detform.det_oracle(coeff)
        if abs(lam) < 1e-2:
            continue
        mapped = [z / (a * z + b) for z in nodes]
        matrix = [
            [sum(coeff[i][k] * w**k for k in range(n)) for w in mapped]
            for i in range(n)
        ]
        lhs = detform.det_oracle(matrix)
        rhs = lam * b ** (n * (n - 1) // 2) * as_complex(detform.prod_diff(nodes))
        for z in nodes:
            rhs /= (a * z + b) ** (n - 1)
        worst = max(worst, _rel(lhs, rhs))
        total += 1
    return CheckResult("mapped_alternant", total, worst, 1e-8)


def _check_complex_index_shift(trials: int, seed: int) -> CheckResult:
    """det[(z_j)_{s;t-i}] = prod_j (z_j)_{s;t} * det[(z_j + t s)_{s;-i}]."""
    rng = _rng(seed, "detform", "complex_index_shift")
    worst = 0.0
    total = 0
    while total < max(10, trials // 5):
        n = rng.randint(2, 5)
        nodes = [complex(rng.uniform(0.5, 3.0), rng.uniform(-1.0, 1.0)) for _ in range(n)]
        if any(abs(nodes[i] - nodes[j]) < NODE_SEP for i in range(n) for j in range(i + 1, n)):
            continue
        s = complex(rng.uniform(0.4, 1.5), rng.uniform(-0.3, 0.3))
        t = _draw_disc(rng, 1.0)
        try:
            matrix = [[sf_general(z, s, t - i) for z in nodes] for i in range(n)]
            lhs = detform.det_oracle(matrix)
            pref = 1 + 0j
            for z in nodes:
                pref *= as_complex(sf_general(z, s, t))
            shifted = [z + t * s for z in nodes]
            spec = DeterminantSpec(DetKind.NEG_INDEX, s=s)
            if not _margin_ok(spec, shifted):
                continue
            rhs = pref * as_complex(detform.det_closed(spec, shifted))
        except PoleError:
            continue
        worst = max(worst, _rel(lhs, rhs))
        total += 1
    return CheckResult("complex_index_shift", total, worst, 1e-8)


def run_detform_suite(trials: int = 100, seed: int = 0) -> SuiteReport:
    report = SuiteReport(suite="detform", seed=seed)
    for kind in DetKind:
        report.checks.append(_check_kind_oracle(kind, trials, seed))
    report.checks.append(_check_exact_dets(trials, seed))
    report.checks.extend(_check_triangular(max(50, trials // 2), seed))
    report.checks.append(_check_s_independence(trials, seed))
    report.checks.append(_check_antisymmetry(trials, seed))
    report.checks.append(_check_coincident(trials, seed))
    report.checks.append(_check_alternant_scaling(trials, seed))
    report.checks.append(_check_rearrangements(trials, seed))
    report.checks.append(_check_prod_diff_maps(trials, seed))
    report.checks.append(_check_power_cases(trials, seed))
    report.checks.append(_check_mapped_alternant(trials, seed))
    report.checks.append(_check_complex_index_shift(trials, seed))
    return report


# ===========================================================================
# apsum suite
# ===========================================================================


def _check_apsum_triple(trials: int, seed: int) -> CheckResult:
    rng = _rng(seed, "apsum", "triple")
    worst = 0.0
    total = 0
    for _ in range(trials):
        a = _draw_fraction(rng, span=8)
        s = _draw_fraction(rng)
        p = rng.randint(0, 8)
        n = rng.randint(1, 20)
        r = _draw_fraction(rng)
        if r != 0:
            args = apsum.APSumArgs(a, r, s, p, n)
            if apsum.ap_sum_recurrence(args) != apsum.ap_sum_direct(args):
                worst = math.inf
        if s != 0:
            for r2 in (s, -s):
                args = apsum.APSumArgs(a, r2, s, p, n)
                direct = apsum.ap_sum_direct(args)
                if apsum.ap_sum_recurrence(args) != direct:
                    worst = math.inf
                if apsum.ap_sum_closed(args) != direct:
                    worst = math.inf
        total += 1
    return CheckResult("triple_agreement", total, worst, 0.0)


def _check_apsum_negation(trials: int, seed: int) -> CheckResult:
    rng = _rng(seed, "apsum", "negation")
    worst = 0.0
    for _ in range(trials):
        a, r, s = (_draw_fraction(rng, span=8) for _ in range(3))
        p = rng.randint(0, 6)
        n = rng.randint(1, 12)
        lhs = apsum.ap_sum_direct(apsum.APSumArgs(-a, -r, s, p, n))
        rhs = (-1) ** p * apsum.ap_sum_direct(apsum.APSumArgs(a, r, -s, p, n))
        if lhs != rhs:
            worst = math.inf
    return CheckResult("negation_symmetry", trials, worst, 0.0)


def _check_apsum_scaling(trials: int, seed: int) -> CheckResult:
    rng = _rng(seed, "apsum", "scaling")
    worst = 0.0
    for _ in range(trials):
        a = _draw_disc(rng, 4.0)
        r = _draw_disc(rng, 3.0)
        s = _draw_disc(rng, 2.0, min_abs=0.2)
        p = rng.randint(0, 6)
        n = rng.randint(1, 12)
        lhs = apsum.ap_sum_direct(apsum.APSumArgs(a, r, s, p, n))
        rhs = s**p * as_complex(
            apsum.ap_sum_direct(apsum.APSumArgs(a / s, r / s, 1, p, n))
        )
        worst = max(worst, _rel(lhs, rhs))
    return CheckResult("shift_scaling", trials, worst, 1e-10)


def _check_apsum_anchors(seed: int) -> CheckResult:
    ok = (
        apsum.ap_sum_closed(apsum.APSumArgs(1, 1, 1, 1, 3)) == 6
        and apsum.ap_sum_closed(apsum.APSumArgs(1, 1, -1, 4, 3)) == 0
        and apsum.ap_sum_closed(apsum.APSumArgs(1, 1, -1, 2, 3)) == 8
        and apsum.ap_sum_direct(apsum.APSumArgs(5, 2, 3, 0, 7)) == 7
    )
    return CheckResult("closed_form_anchors", 4, 0.0 if ok else math.inf, 0.0)


def run_apsum_suite(trials: int = 100, seed: int = 0) -> SuiteReport:
    report = SuiteReport(suite="apsum", seed=seed)
    report.checks.append(_check_apsum_triple(trials, seed))
    report.checks.append(_check_apsum_negation(trials, seed))
    report.checks.append(_check_apsum_scaling(trials, seed))
    report.checks.append(_check_apsum_anchors(seed))
    return report


# ===========================================================================
# rmtpdd suite
# ===========================================================================


def _ensembles():
    return [
        EnsembleSpec("hermite", n=3),
        EnsembleSpec("laguerre", n=3, alpha=0.7),
        EnsembleSpec("gegenbauer", n=3, lam=0.8),
        EnsembleSpec("jacobi", n=3, a=1.5, b=2.5),
    ]


def _check_phi_oracle(seed: int) -> CheckResult:
    worst = 0.0
    total = 0
    for ens in _ensembles():
        svals = [1.0] if ens.kind is EnsembleKind.JACOBI else [0.7, 1.0, 2.0, 3.5]
        parities = ["+"] if ens.kind is EnsembleKind.JACOBI else ["+", "-"]
        for s in svals:
            for j in range(9):
                for k in range(9 - j):
                    for par in parities:
                        closed = rmtpdd.phi_element(ens, j, k, s, par)
                        oracle = rmtpdd.quadrature_phi(ens, j, k, s, par)
                        if oracle == 0:
                            worst = max(worst, abs(closed))
                        else:
                            worst = max(worst, abs(closed - oracle) / abs(oracle))
                        total += 1
    return CheckResult("phi_vs_quadrature", total, worst, 1e-8)


def _check_checkerboard(seed: int) -> CheckResult:
    worst = 0.0
    total = 0
    for kind, kwargs in (("hermite", {}), ("gegenbauer", {"lam": 1.3})):
        for n in range(1, 7):
            ens = EnsembleSpec(kind, n=n, **kwargs)
            for s in (0.9, 2.3):
                for par in ("+", "-"):
                    full = [
                        [rmtpdd.phi_element(ens, j, k, s, par) for k in range(n)]
                        for j in range(n)
                    ]
                    oracle = detform.det_oracle(full)
                    res = rmtpdd.mellin_closed(ens, s, par)
                    det_blocks = res.value / (
                        0.5 * rmtpdd.normalization_const(ens) * math.factorial(n)
                    )
                    if abs(oracle) < 1e-14:
                        worst = max(worst, abs(det_blocks))
                    else:
                        worst = max(worst, abs(oracle - det_blocks) / abs(oracle))
                    total += 1
    return CheckResult("checkerboard_factorization", total, worst, 1e-9)


def _check_block_closed_forms(seed: int) -> CheckResult:
    """Factorization blocks against elimination determinants of the
    corresponding sub-matrices (sizes <= 4)."""
    worst = 0.0
    total = 0
    for kind, kwargs in (("hermite", {}), ("gegenbauer", {"lam": 0.8})):
        for n in range(1, 9):
            if (n + 1) // 2 > 4:
                continue
            ens = EnsembleSpec(kind, n=n, **kwargs)
            for s in (0.7, 1.6, 3.1):
                res = rmtpdd.mellin_closed(ens, s, "+")
                m_even = (n + 1) // 2
                m_odd = n // 2
                even_block = [
                    [rmtpdd.phi_element(ens, 2 * j, 2 * k, s, "+") for k in range(m_even)]
                    for j in range(m_even)
                ]
                worst = max(worst, _rel(detform.det_oracle(even_block) if m_even else 1.0,
                                        res.factorization[0]))
                if m_odd:
                    odd_block = [
                        [rmtpdd.phi_element(ens, 2 * j + 1, 2 * k + 1, s, "+") for k in range(m_odd)]
                        for j in range(m_odd)
                    ]
                    worst = max(worst, _rel(detform.det_oracle(odd_block), res.factorization[1]))
                if n % 2 == 0:
                    resm = rmtpdd.mellin_closed(ens, s, "-")
                    mixed = [
                        [rmtpdd.phi_element(ens, 2 * j, 2 * k + 1, s, "-") for k in range(n // 2)]
                        for j in range(n // 2)
                    ]
                    worst = max(worst, _rel(detform.det_oracle(mixed), resm.factorization[0]))
                total += 1
    return CheckResult("block_closed_forms", total, worst, 1e-9)


def _check_laguerre_det(seed: int) -> CheckResult:
    worst = 0.0
    total = 0
    for alpha in (0.0, 0.7, 2.3):
        for n in range(1, 6):
            ens = EnsembleSpec("laguerre", n=n, alpha=alpha)
            for s in (0.7, 1.0, 2.5):
                matrix = [
                    [rmtpdd.phi_element(ens, j, k, s, "+") for k in range(n)]
                    for j in range(n)
                ]
                oracle = detform.det_oracle(matrix)
                plus = rmtpdd.mellin_closed(ens, s, "+")
                minus = rmtpdd.mellin_closed(ens, s, "-")
                worst = max(worst, _rel(oracle, plus.factorization[0]))
                worst = max(worst, _rel(plus.value, minus.value))
                total += 1
    return CheckResult("laguerre_determinant", total, worst, 1e-9)


def _check_jacobi_normalization(seed: int) -> CheckResult:
    rng = _rng(seed, "rmtpdd", "jacobi_norm")
    worst = 0.0
    total = 0
    for _ in range(6):
        a = rng.uniform(-0.5, 3.0)
        b = rng.uniform(-0.5, 3.0)
        for n in range(1, 6):
            # route through the inverse-gamma determinant family
            pref = math.factorial(n)
            log2 = 0.0
            sign = 1.0
            for j in range(n):
                sign *= (-1) ** j
                log2 += (a + b + 1 + 2 * j) * math.log(2.0)
            gams = math.exp(
                sum(math.lgamma(a + 1 + j) + math.lgamma(b + 1 + j) for j in range(n))
            )
            nodes = [a + b + 2 + j for j in range(n)]
            detval = as_complex(
                detform.det_closed(DeterminantSpec(DetKind.INV_GAMMA), nodes)
            )
            route = pref * sign * math.exp(log2) * gams * detval.real
            closed = math.exp(rmtpdd.jacobi_log_norm(n, a, b))
            worst = max(worst, abs(route - closed) / closed)
            total += 1
    return CheckResult("jacobi_normalization_route", total, worst, 1e-10)


def _check_jacobi_2d_quadrature(seed: int) -> CheckResult:
    import numpy as np

    rng = _rng(seed, "rmtpdd", "jacobi_2d")
    worst = 0.0
    total = 0
    for _ in range(4):
        a = rng.uniform(-0.3, 2.5)
        b = rng.uniform(-0.3, 2.5)
        ens = EnsembleSpec("jacobi", n=2, a=a, b=b)
        nodes, wts = rmtpdd.gauss_rule(ens, 24)
        grid_x, grid_y = np.meshgrid(nodes, nodes)
        grid_wx, grid_wy = np.meshgrid(wts, wts)
        integral = float(np.sum(grid_wx * grid_wy * (grid_x - grid_y) ** 2))
        closed = math.exp(rmtpdd.jacobi_log_norm(2, a, b))
        worst = max(worst, abs(integral - closed) / closed)
        total += 1
    return CheckResult("jacobi_2d_quadrature", total, worst, 1e-5)


def _check_moment_normalization(seed: int) -> CheckResult:
    worst = 0.0
    total = 0
    for base in _ensembles():
        for n in range(1, 5):
            ens = EnsembleSpec(base.kind, n=n, alpha=base.alpha, lam=base.lam, a=base.a, b=base.b)
            worst = max(worst, abs(rmtpdd.integer_moment(ens, 0) - 1.0))
            total += 1
    return CheckResult("moment_zero_normalization", total, worst, 1e-8)


def _check_expectation_factorization(seed: int) -> CheckResult:
    import numpy as np

    ens = EnsembleSpec("hermite", n=2)
    nodes, wts = rmtpdd.gauss_rule(ens, 24)
    grid_x, grid_y = np.meshgrid(nodes, nodes)
    grid_wx, grid_wy = np.meshgrid(wts, wts)
    direct = float(
        np.sum(grid_wx * grid_wy * (grid_x - grid_y) ** 2 * grid_x**2 * grid_y**2)
    )
    matrix = [
        [rmtpdd.phi_element(ens, j, k, 3.0, "+") for k in range(2)] for j in range(2)
    ]
    det_route = 2 * detform.det_oracle(matrix)
    worst = abs(direct - det_route.real) / abs(det_route.real)
    return CheckResult("expectation_factorization", 1, worst, 1e-6)


def _check_parity_zero(seed: int) -> CheckResult:
    worst = 0.0
    total = 0
    for kind, kwargs in (("hermite", {}), ("gegenbauer", {"lam": 1.1})):
        for n in (1, 3, 5):
            ens = EnsembleSpec(kind, n=n, **kwargs)
            res = rmtpdd.mellin_closed(ens, 1.7, "-")
            worst = max(worst, abs(res.value))
            total += 1
    return CheckResult("odd_parity_zero", total, worst, 0.0)


def _check_norms_vs_quadrature(seed: int) -> CheckResult:
    import numpy as np

    worst = 0.0
    total = 0
    for ens in _ensembles():
        nus = rmtpdd.monic_norms(ens, 6)
        nodes, wts = rmtpdd.gauss_rule(ens, 40)
        for deg in range(6):
            vals = rmtpdd.monic_eval(ens, deg, nodes)
            quad = float(np.sum(wts * vals * vals))
            worst = max(worst, abs(quad - nus[deg]) / abs(nus[deg]))
            total += 1
    return CheckResult("monic_norms_vs_quadrature", total, worst, 1e-9)


def run_rmtpdd_suite(trials: int = 100, seed: int = 0) -> SuiteReport:
    report = SuiteReport(suite="rmtpdd", seed=seed)
    report.checks.append(_check_phi_oracle(seed))
    report.checks.append(_check_checkerboard(seed))
    report.checks.append(_check_block_closed_forms(seed))
    report.checks.append(_check_laguerre_det(seed))
    report.checks.append(_check_jacobi_normalization(seed))
    report.checks.append(_check_jacobi_2d_quadrature(seed))
    report.checks.append(_check_moment_normalization(seed))
    report.checks.append(_check_expectation_factorization(seed))
    report.checks.append(_check_parity_zero(seed))
    report.checks.append(_check_norms_vs_quadrature(seed))
    return report


# ===========================================================================
# front door
# ===========================================================================

SUITES = {
    "sfact": run_sfact_suite,
    "detform": run_detform_suite,
    "apsum": run_apsum_suite,
    "rmtpdd": run_rmtpdd_suite,
}


def run_suite(name: str, trials: int = 100, seed: int = 0) -> list:
    """Run one named suite (or 'all'); returns a list of SuiteReport."""
    if name == "all":
        return [fn(trials=trials, seed=seed) for fn in SUITES.values()]
    if name not in SUITES:
        raise numkernel.DomainError(
            f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'"
        )
    return [SUITES[name](trials=trials, seed=seed)]
