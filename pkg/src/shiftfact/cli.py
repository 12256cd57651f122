"""The ``shiftfact`` command line: evaluate shifted factorials, determinant
families, progression sums and random-matrix Mellin moments, and run the
verification suites.

Exit codes: 0 on success, 1 when a pole / identity / oracle-residual check
fails, 2 on usage or parse errors.  All output is deterministic for a fixed
seed (SHIFTFACT_SEED or --seed).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

from . import selftest
from .apsum import APSumArgs, ap_sum_closed, ap_sum_direct, ap_sum_recurrence
from .detform import (
    DeterminantSpec,
    DetKind,
    IdentityViolation,
    det_oracle,
    det_verify,
    result_to_doc,
    spec_from_doc,
)
from .numkernel import DomainError, PoleError, as_complex, is_exact
from .rmtpdd import (
    EnsembleSpec,
    QuadratureError,
    UnsupportedCaseError,
    integer_moment,
    mellin_closed,
    normalization_const,
    phi_element,
)
from .sfact import sf_general, sf_int


class UsageError(ValueError):
    pass


def parse_scalar(text: str):
    """Parse 'p/q' rationals, integer/float literals, and 'a+bi' complex
    literals (both i and j accepted as the imaginary unit)."""
    raw = text.strip()
    if not raw:
        raise UsageError("empty scalar literal")
    if "/" in raw:
        try:
            return Fraction(raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad rational literal {text!r}") from exc
    try:
        return int(raw)
    except ValueError:
        pass
    try:
        return float(raw)
    except ValueError:
        pass
    try:
        value = complex(raw.replace("i", "j").replace(" ", ""))
    except ValueError as exc:
        raise UsageError(f"bad scalar literal {text!r}") from exc
    return value


def parse_scalar_list(text: str):
    return tuple(parse_scalar(part) for part in text.split(","))


def format_scalar(value, exact: bool = False) -> str:
    if isinstance(value, Fraction):
        if not exact:
            return format_scalar(float(value))
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return str(value)
    z = as_complex(value)
    if z.imag == 0.0:
        r = z.real
        if r == int(r) and abs(r) < 1e15:
            return str(int(r))
        return repr(r)
    re_part = format_scalar(z.real) if z.real else "0"
    sign = "+" if z.imag >= 0 else "-"
    im = abs(z.imag)
    im_part = format_scalar(im)
    return f"{re_part}{sign}{im_part}i"


def _emit(text: str, out_path):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------------------
# eval
# ---------------------------------------------------------------------------


def cmd_eval(args) -> int:
    z = parse_scalar(args.z)
    s = parse_scalar(args.s)
    indices = [v for v in (args.n, args.q, args.t) if v is not None]
    if len(indices) != 1:
        raise UsageError("give exactly one of --n, --q, --t")
    if args.exact:
        if not (is_exact(z) and is_exact(s)):
            raise UsageError("--exact needs rational --z and --s (use p/q literals)")
        if args.t is not None:
            raise UsageError("--exact applies to integer indices (--n or --q) only")
    if args.n is not None:
        if args.n < 0:
            raise UsageError("--n must be >= 0")
        value = sf_int(z, s, args.n)
    elif args.q is not None:
        value = sf_int(z, s, args.q)
    else:
        value = sf_general(z, s, parse_scalar(args.t))
    text = format_scalar(value, exact=args.exact)
    if args.format == "json":
        doc = {"value": text} if args.exact else {"value": _scalar_doc(value)}
        text = json.dumps(doc, sort_keys=True)
    _emit(text, args.out)
    return 0


def _scalar_doc(value):
    z = as_complex(value)
    return z.real if z.imag == 0.0 else [z.real, z.imag]


# ---------------------------------------------------------------------------
# det
# ---------------------------------------------------------------------------


def _spec_from_args(args):
    if args.spec:
        with open(args.spec) as fh:
            doc = json.load(fh)
        return spec_from_doc(doc)
    if not args.kind or not args.nodes:
        raise UsageError("give --spec FILE, or --kind and --nodes")
    kwargs = {}
    for name in ("a", "b", "t"):
        raw = getattr(args, name)
        if raw is not None:
            kwargs[name] = parse_scalar(raw)
    if args.offsets:
        kwargs["offsets"] = parse_scalar_list(args.offsets)
    if args.w:
        kwargs["w"] = parse_scalar_list(args.w)
    spec = DeterminantSpec(
        kind=DetKind(args.kind), s=parse_scalar(args.s), **kwargs
    )
    return spec, parse_scalar_list(args.nodes)


def cmd_det(args) -> int:
    if args.oracle_only and args.closed_only:
        raise UsageError("--oracle-only and --closed-only are mutually exclusive")
    try:
        spec, nodes = _spec_from_args(args)
    except (KeyError, ValueError, json.JSONDecodeError) as exc:
        raise UsageError(f"bad determinant spec: {exc}") from exc
    result = det_verify(
        spec,
        nodes,
        compute_oracle=not args.closed_only,
        compute_closed=not args.oracle_only,
    )
    if args.format == "json":
        _emit(json.dumps(result_to_doc(result), sort_keys=True), args.out)
    else:
        lines = []
        if result.closed_form is not None:
            lines.append(f"closed_form: {format_scalar(result.closed_form, exact=True)}")
        if result.oracle is not None:
            lines.append(f"oracle: {format_scalar(result.oracle, exact=True)}")
        if result.residual is not None:
            lines.append(f"residual: {result.residual:.6e}")
        _emit("\n".join(lines), args.out)
    if result.residual is not None and result.residual > args.threshold:
        print(
            f"error: residual {result.residual:.6e} exceeds threshold "
            f"{args.threshold:.1e}",
            file=sys.stderr,
        )
        return 1
    return 0


# ---------------------------------------------------------------------------
# sum
# ---------------------------------------------------------------------------


def cmd_sum(args) -> int:
    values = APSumArgs(
        a=parse_scalar(args.a),
        r=parse_scalar(args.r),
        s=parse_scalar(args.s),
        p=args.p,
        n=args.n,
    )
    if args.exact and not all(is_exact(v) for v in (values.a, values.r, values.s)):
        raise UsageError("--exact needs rational --a, --r, --s")
    if args.method == "direct":
        value = ap_sum_direct(values)
    elif args.method == "recurrence":
        value = ap_sum_recurrence(values)
    else:
        value = ap_sum_closed(values)
    text = format_scalar(value, exact=args.exact)
    if args.format == "json":
        doc = {"value": text if args.exact else _scalar_doc(value), "method": args.method}
        text = json.dumps(doc, sort_keys=True)
    _emit(text, args.out)
    return 0


# ---------------------------------------------------------------------------
# rmt
# ---------------------------------------------------------------------------


def _ensemble_from_args(args) -> EnsembleSpec:
    return EnsembleSpec(
        kind=args.ensemble,
        n=args.n,
        alpha=args.alpha,
        lam=args.lam,
        a=args.jacobi_a,
        b=args.jacobi_b,
    )


def _ensemble_params(ens: EnsembleSpec) -> str:
    parts = []
    if ens.alpha is not None:
        parts.append(f"alpha={ens.alpha!r}")
    if ens.lam is not None:
        parts.append(f"lam={ens.lam!r}")
    if ens.a is not None:
        parts.append(f"a={ens.a!r};b={ens.b!r}")
    return ",".join(parts)


def _mellin_oracle(ens: EnsembleSpec, s, parity: str) -> complex:
    """Independent route: eliminate the full element matrix instead of using
    the checkerboard block closed forms."""
    n = ens.n
    matrix = [[phi_element(ens, j, k, s, parity) for k in range(n)] for j in range(n)]
    return 0.5 * normalization_const(ens) * math.factorial(n) * as_complex(det_oracle(matrix))


def _rmt_rows(args, ens: EnsembleSpec):
    rows = []
    parity = {"plus": "+", "minus": "-"}.get(args.parity, args.parity)
    if args.q is not None or args.q_max is not None:
        qs = range(args.q_max + 1) if args.q_max is not None else [args.q]
        for q in qs:
            par = "+" if q % 2 == 0 else "-"
            value = integer_moment(ens, q)
            oracle = residual = None
            if args.oracle:
                oracle = (2 * _mellin_oracle(ens, q + 1, par)).real
                residual = abs(value - oracle) / max(abs(oracle), 1e-300)
            rows.append(
                {
                    "ensemble": ens.kind.value,
                    "params": _ensemble_params(ens),
                    "n": ens.n,
                    "q_or_s": q,
                    "parity": par,
                    "value": value,
                    "oracle": oracle,
                    "residual": residual,
                }
            )
    else:
        s = parse_scalar(args.s)
        result = mellin_closed(ens, s, parity)
        oracle = residual = None
        if args.oracle:
            oracle = _mellin_oracle(ens, s, parity)
            scale = max(abs(oracle), abs(result.value))
            residual = abs(result.value - oracle) / scale if scale else 0.0
            oracle = _scalar_doc(oracle)
        rows.append(
            {
                "ensemble": ens.kind.value,
                "params": _ensemble_params(ens),
                "n": ens.n,
                "q_or_s": format_scalar(s),
                "parity": result.parity,
                "value": _scalar_doc(result.value),
                "oracle": oracle,
                "residual": residual,
            }
        )
    return rows


def cmd_rmt(args) -> int:
    if (args.s is None) == (args.q is None and args.q_max is None):
        raise UsageError("give either --s, or --q / --q-max")
    ens = _ensemble_from_args(args)
    rows = _rmt_rows(args, ens)
    if args.format == "json":
        text = json.dumps(rows, sort_keys=True)
    elif args.format == "csv":
        header = ["ensemble", "params", "n", "q_or_s", "parity", "value", "oracle", "residual"]
        lines = [",".join(header)]
        for row in rows:
            lines.append(",".join("" if row[h] is None else str(row[h]) for h in header))
        text = "\n".join(lines)
    else:
        lines = []
        for row in rows:
            piece = (
                f"{row['ensemble']}({row['params']}) n={row['n']} "
                f"{'q' if isinstance(row['q_or_s'], int) else 's'}={row['q_or_s']} "
                f"parity={row['parity']} value={row['value']}"
            )
            if row["oracle"] is not None:
                piece += f" oracle={row['oracle']} residual={row['residual']:.3e}"
            lines.append(piece)
        text = "\n".join(lines)
    _emit(text, args.out)
    if args.oracle:
        bad = [r for r in rows if r["residual"] is not None and r["residual"] > args.threshold]
        if bad:
            print(
                f"error: {len(bad)} rows exceed the residual threshold "
                f"{args.threshold:.1e}",
                file=sys.stderr,
            )
            return 1
    return 0


# ---------------------------------------------------------------------------
# selftest
# ---------------------------------------------------------------------------


def cmd_selftest(args) -> int:
    reports = selftest.run_suite(args.suite, trials=args.trials, seed=args.seed)
    if args.format == "json":
        text = json.dumps([r.to_doc() for r in reports], sort_keys=True)
    else:
        blocks = [r.to_text() for r in reports]
        overall = all(r.passed for r in reports)
        blocks.append(f"overall: {'PASS' if overall else 'FAIL'}")
        text = "\n".join(blocks)
    _emit(text, args.out)
    return 0 if all(r.passed for r in reports) else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shiftfact",
        description="shifted factorials, determinant closed forms, and "
        "random-matrix determinant moments",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    default_seed = int(os.environ.get("SHIFTFACT_SEED", "0"))

    p = sub.add_parser("eval", help="evaluate a shifted factorial (z)_{s;index}")
    p.add_argument("--z", required=True, help="base, scalar literal")
    p.add_argument("--s", required=True, help="shift, scalar literal")
    p.add_argument("--n", type=int, help="nonnegative integer index")
    p.add_argument("--q", type=int, help="integer index (may be negative)")
    p.add_argument("--t", help="complex index, scalar literal")
    p.add_argument("--exact", action="store_true", help="exact rational path")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", help="write output to this file")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("det", help="evaluate a determinant family instance")
    p.add_argument("--spec", help="path to a schema-1 JSON determinant document")
    p.add_argument("--kind", choices=[k.value for k in DetKind])
    p.add_argument("--nodes", help="comma-separated node scalars")
    p.add_argument("--s", default="1", help="shift (ignored by gamma/binomial kinds)")
    p.add_argument("--a", help="kind parameter a")
    p.add_argument("--b", help="kind parameter b")
    p.add_argument("--t", help="kind parameter t")
    p.add_argument("--offsets", help="comma-separated per-row offsets")
    p.add_argument("--w", help="comma-separated second node set")
    p.add_argument("--oracle-only", action="store_true")
    p.add_argument("--closed-only", action="store_true")
    p.add_argument("--threshold", type=float, default=1e-8)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_det)

    p = sub.add_parser("sum", help="sum shifted factorials over an arithmetic progression")
    p.add_argument("--a", required=True, help="first base")
    p.add_argument("--r", required=True, help="progression step")
    p.add_argument("--s", required=True, help="shift")
    p.add_argument("--p", type=int, required=True, help="factorial order >= 0")
    p.add_argument("--n", type=int, required=True, help="term count >= 1")
    p.add_argument("--method", choices=("direct", "recurrence", "closed"), default="direct")
    p.add_argument("--exact", action="store_true")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sum)

    p = sub.add_parser("rmt", help="Mellin values / integer moments of ensemble determinants")
    p.add_argument("--ensemble", required=True,
                   choices=("hermite", "laguerre", "gegenbauer", "jacobi"))
    p.add_argument("--n", type=int, required=True, help="matrix dimension")
    p.add_argument("--alpha", type=float, help="laguerre weight exponent")
    p.add_argument("--lam", type=float, help="gegenbauer weight parameter")
    p.add_argument("--jacobi-a", type=float, help="jacobi (1-x) exponent")
    p.add_argument("--jacobi-b", type=float, help="jacobi (1+x) exponent")
    p.add_argument("--s", help="Mellin variable, scalar literal")
    p.add_argument("--q", type=int, help="single integer moment order")
    p.add_argument("--q-max", type=int, help="emit the moment table 0..q_max")
    p.add_argument("--parity", choices=("+", "-", "plus", "minus"), default="+")
    p.add_argument("--oracle", action="store_true",
                   help="also evaluate the full-matrix elimination route")
    p.add_argument("--threshold", type=float, default=1e-8)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_rmt)

    p = sub.add_parser("selftest", help="run the verification suites")
    p.add_argument("--suite", choices=("sfact", "detform", "apsum", "rmtpdd", "all"),
                   default="all")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=default_seed)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except PoleError as exc:
        print(f"pole error: {exc}", file=sys.stderr)
        return 1
    except (IdentityViolation, UnsupportedCaseError, QuadratureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
