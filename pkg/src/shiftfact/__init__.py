"""Shifted-factorial calculus, determinant closed forms, and random-matrix
determinant moments.

Modules by theme:

* ``numkernel`` -- complex gamma / log-gamma, principal powers, exact integers
* ``sfact``     -- the s-shifted factorial in every index regime and its identities
* ``detform``   -- determinant families with closed-form values and LU oracles
* ``apsum``     -- finite sums of shifted factorials over arithmetic progressions
* ``rmtpdd``    -- Mellin moments of determinant distributions of unitary ensembles
* ``selftest``  -- seeded random verification suites for all of the above
* ``cli``       -- the ``shiftfact`` command-line front end
"""

__version__ = "0.1.0"

from .numkernel import (  # noqa: F401
    DomainError,
    PoleError,
    complex_gamma,
    complex_log_gamma,
    exact_binomial,
    exact_factorial,
    principal_power,
)
from .sfact import (  # noqa: F401
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
from .apsum import APSumArgs, ap_sum_closed, ap_sum_direct, ap_sum_recurrence  # noqa: F401
from .detform import (  # noqa: F401
    DeterminantSpec,
    DetKind,
    DetResult,
    IdentityViolation,
    TriangularKind,
    build_matrix,
    det_closed,
    det_oracle,
    det_verify,
    prod_diff,
    triangular_entry,
)
from .rmtpdd import (  # noqa: F401
    EnsembleKind,
    EnsembleSpec,
    MellinResult,
    integer_moment,
    mellin_closed,
    normalization_const,
    phi_element,
    quadrature_phi,
)
