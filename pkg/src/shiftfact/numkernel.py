"""Scalar numeric kernel: complex gamma / log-gamma, principal powers, exact integers.

Everything here is a pure function of its arguments.  Two numeric worlds
coexist throughout the package:

* approximate: Python ``complex`` (IEEE double components),
* exact: Python ``int`` and ``fractions.Fraction``.

Mixed arithmetic works because ``Fraction`` falls back to ``float``/``complex``
when combined with inexact operands.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from typing import Union

Scalar = Union[int, float, complex, Fraction]

#: An argument closer than this to a nonpositive integer counts as a gamma pole.
POLE_TOL = 1e-10

_LOG_PI = math.log(math.pi)
_SQRT_2PI = 2.5066282746310005024157652848110


class PoleError(ArithmeticError):
    """A gamma-type evaluation hit (or got within tolerance of) a pole.

    Attributes:
        location: the offending argument.
        context: human-readable description of which precondition failed.
    """

    def __init__(self, location, context=""):
        self.location = location
        self.context = context
        msg = f"pole at argument {location!r}"
        if context:
            msg += f" ({context})"
        super().__init__(msg)


class DomainError(ValueError):
    """Arguments outside the mathematical domain of an operation."""


def is_exact(x) -> bool:
    """True for scalars carried exactly (int or Fraction)."""
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def as_complex(x) -> complex:
    """Coerce any supported scalar to complex (Fractions go through float)."""
    if isinstance(x, Fraction):
        return complex(float(x))
    return complex(x)


def as_int_index(t):
    """Return ``t`` as a Python int when it carries an exactly integral value,
    else None.  Used to route integer indices to product-form evaluation."""
    if isinstance(t, bool):
        return None
    if isinstance(t, int):
        return t
    if isinstance(t, Fraction):
        return int(t) if t.denominator == 1 else None
    if isinstance(t, float):
        return int(t) if t.is_integer() and abs(t) < 2**53 else None
    if isinstance(t, complex):
        if t.imag == 0.0 and t.real.is_integer() and abs(t.real) < 2**53:
            return int(t.real)
        return None
    return None


def gamma_pole_distance(z) -> float:
    """Distance from ``z`` to the nearest nonpositive integer (gamma pole set)."""
    z = as_complex(z)
    k = round(z.real)
    if k > 0:
        k = 0
    return abs(z - k)


def is_gamma_pole(z, tol: float = POLE_TOL) -> bool:
    """True when ``z`` is within ``tol`` of a nonpositive integer.

    Exact scalars are tested exactly, so e.g. Fraction(-599, 200) is never
    flagged however close it sits to -3.
    """
    if is_exact(z):
        return z <= 0 and Fraction(z).denominator == 1
    return gamma_pole_distance(z) <= tol


# ---------------------------------------------------------------------------
# Lanczos approximation of log-gamma.
#
# Coefficients for g = 607/128 with a 14-term rational series, due to Godfrey;
# quoted to double precision in Numerical Recipes, 3rd ed., section 6.1.  They
# give close to full double accuracy for Re z > 0.
# ---------------------------------------------------------------------------

_LANCZOS_G = 607.0 / 128.0
_LANCZOS_C0 = 0.999999999999997092
_LANCZOS_COF = (
    57.1562356658629235,
    -59.5979603554754912,
    14.1360979747417471,
    -0.491913816097620199,
    0.339946499848118887e-4,
    0.465236289270485756e-4,
    -0.983744753048795646e-4,
    0.158088703224912494e-3,
    -0.210264441724104883e-3,
    0.217439618115212643e-3,
    -0.164318106536763890e-3,
    0.844182239838527433e-4,
    -0.261908384015814087e-4,
    0.368991826595316234e-5,
)


def _lanczos_log_gamma(z: complex) -> complex:
    # valid for Re z >= 0.5 (used only there)
    t = z + (_LANCZOS_G + 0.5)
    ser = _LANCZOS_C0
    for k, c in enumerate(_LANCZOS_COF, start=1):
        ser += c / (z + k)
    return (z + 0.5) * cmath.log(t) - t + cmath.log(_SQRT_2PI * ser / z)


def _log_sin_pi(z: complex) -> complex:
    """log(sin(pi z)) up to an integer multiple of 2*pi*i, overflow-free.

    The real part is reduced modulo 1 so accuracy survives near the zeros of
    sin, and the exponentially growing factor for large |Im z| is carried in
    log space.
    """
    if z.imag < 0.0:
        return _log_sin_pi(z.conjugate()).conjugate()
    m = math.floor(z.real + 0.5)
    r = complex(z.real - m, z.imag)
    if r.imag <= 1.0:
        val = cmath.log(cmath.sin(math.pi * r))
    else:
        # sin(pi r) = (i/2) e^{-i pi r} (1 - e^{2 i pi r}), |e^{2 i pi r}| < 1
        val = (
            complex(-math.log(2.0), 0.5 * math.pi)
            - 1j * math.pi * r
            + cmath.log(1.0 - cmath.exp(2j * math.pi * r))
        )
    if m & 1:
        val += 1j * math.pi  # log((-1)^m)
    return val


def complex_log_gamma(z: Scalar) -> complex:
    """log Gamma(z) for complex z, real-valued on the positive real axis.

    Away from the real axis the imaginary part may differ from the analytic
    continuation of log Gamma by a multiple of 2*pi*i; exponentials of
    differences (the only downstream use) are unaffected.

    Raises PoleError when z is within POLE_TOL of a nonpositive integer.
    """
    if is_gamma_pole(z):
        raise PoleError(z, "gamma argument is a nonpositive integer")
    z = as_complex(z)
    if z.real < 0.5:
        # reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return _LOG_PI - _log_sin_pi(z) - complex_log_gamma(1.0 - z)
    return _lanczos_log_gamma(z)


def complex_gamma(z: Scalar) -> complex:
    """Gamma(z) for complex z; PoleError at nonpositive integers."""
    return cmath.exp(complex_log_gamma(z))


def inv_gamma(z: Scalar) -> complex:
    """1 / Gamma(z), entire: returns 0 at (near-)poles of Gamma."""
    if is_gamma_pole(z):
        return 0j
    return cmath.exp(-complex_log_gamma(z))


def gamma_ratio(num: Scalar, den: Scalar) -> complex:
    """Gamma(num) / Gamma(den) via a log-gamma difference (overflow-safe)."""
    return cmath.exp(complex_log_gamma(num) - complex_log_gamma(den))


def gamma_product(numerators=(), denominators=()) -> complex:
    """prod Gamma(a) / prod Gamma(b), accumulated in log space."""
    acc = 0j
    for a in numerators:
        acc += complex_log_gamma(a)
    for b in denominators:
        acc -= complex_log_gamma(b)
    return cmath.exp(acc)


def principal_log(w: Scalar) -> complex:
    """Principal logarithm with the argument in (-pi, pi].

    A zero imaginary part is normalised to +0.0 first, so the negative real
    axis always takes arg = +pi (cmath would honour a signed zero).
    """
    w = as_complex(w)
    if w == 0:
        raise DomainError("principal_log(0) is undefined")
    if w.imag == 0.0:
        w = complex(w.real, 0.0)
    return cmath.log(w)


def principal_power(w: Scalar, t: Scalar) -> complex:
    """w**t = exp(t * principal_log(w)); in particular 1**t == 1 for all t.

    w == 0 is allowed only for exponents with positive real part (giving 0).
    """
    t = as_complex(t)
    w = as_complex(w)
    if w == 0:
        if t == 0:
            return 1.0 + 0j
        if t.real > 0 and t.imag == 0.0:
            return 0j
        raise DomainError(
            f"0 cannot be raised to exponent {t!r} (nonpositive real part)"
        )
    if t == 0:
        return 1.0 + 0j
    return cmath.exp(t * principal_log(w))


def exact_factorial(n: int) -> int:
    """n! as an exact integer; n must be a nonnegative integer."""
    if n < 0:
        raise DomainError(f"factorial of negative integer {n}")
    return math.factorial(n)


def exact_binomial(n: int, k: int) -> int:
    """Binomial coefficient C(n, k) for integer n >= 0; 0 outside 0 <= k <= n."""
    if n < 0:
        raise DomainError(f"exact_binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)
