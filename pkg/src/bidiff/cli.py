"""Command line interface.

Commands::

    bidiff symbol <algebra> <k> <route> [--lambda V --mu V] [--format F]
    bidiff apply  <algebra> <k> [--lambda V --mu V] <f> <g> [--format F]
    bidiff verify <suite> [--max-k N] [--seed S]

Algebras: rank1, quadratic:n[:signature], matrix2.  Routes: rodrigues,
recurrence, source.  Parameter values are exact Gaussian rationals
(e.g. ``3``, ``-1/2``, ``1/2+3/4*i``) or the parameter names themselves for
symbolic output.  A config file of ``key = value`` lines (keys: algebra,
format, max_k) supplies defaults; pass the algebra as ``-`` to take it from
the config.  Exit codes: 0 success, 1 verification failure, 2 bad input,
3 exact-division violation.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .engine import (
    bidiff_apply,
    iterate_source,
    rodrigues_c,
    recurrence_c,
    symbol_b,
)
from .errors import BidiffError, DivisibilityViolation, ParseError
from .jordan import JordanAlgebraSpec
from .output import FORMATS, render_poly
from .parsing import parse_poly
from .poly import MPoly, VarSpace
from .scalars import PARAMS, gr, param, ps
from .verify import SUITES, format_report, run_suites

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_DIVISIBILITY = 3


def _read_config(path: str | None) -> dict:
    if not path:
        return {}
    out = {}
    try:
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ValueError(f"bad config line {line!r}")
                key, value = line.split("=", 1)
                out[key.strip()] = value.strip()
    except OSError as exc:
        raise ValueError(f"cannot read config {path!r}: {exc}") from exc
    return out


def _resolve_algebra(token: str, config: dict) -> JordanAlgebraSpec:
    if token == "-":
        token = config.get("algebra", "")
        if not token:
            raise ValueError("algebra '-' requires an 'algebra' entry in the config file")
    return JordanAlgebraSpec.parse(token)


def _parse_param_value(text: str | None, name: str):
    """A Gaussian rational, or None when symbolic (the parameter's own name)."""
    if text is None or text == name:
        return None
    p = parse_poly(text, VarSpace())
    c = p.constant_value()
    v = c.constant_value() if c is not None else None
    if v is None:
        raise ValueError(f"--{name} must be a Gaussian rational or {name!r}")
    return v


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="bidiff",
        description="Exact symbols of covariant bi-differential operators.",
    )
    ap.add_argument("--config", help="key = value file with defaults (algebra, format, max_k)")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--format", choices=FORMATS, help="output format (default text)")
        p.add_argument("--lambda", dest="lam", metavar="V", help="value for lambda")
        p.add_argument("--mu", dest="mu", metavar="V", help="value for mu")

    p_sym = sub.add_parser("symbol", help="emit a symbol polynomial")
    p_sym.add_argument("algebra", help="rank1 | quadratic:n[:sig] | matrix2 | -")
    p_sym.add_argument("k", type=int)
    p_sym.add_argument("route", choices=("rodrigues", "recurrence", "source"))
    add_common(p_sym)

    p_app = sub.add_parser("apply", help="apply the order-k operator to f(x) g(y)")
    p_app.add_argument("algebra", help="rank1 | quadratic:n[:sig] | matrix2 | -")
    p_app.add_argument("k", type=int)
    p_app.add_argument("f", help="polynomial in x variables")
    p_app.add_argument("g", help="polynomial in x variables (acts through the second slot)")
    add_common(p_app)

    p_ver = sub.add_parser("verify", help="run exact verification suites")
    p_ver.add_argument("suite", choices=SUITES)
    p_ver.add_argument("--max-k", dest="max_k", type=int, default=None)
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--format", choices=FORMATS, help=argparse.SUPPRESS)
    return ap


def _cmd_symbol(args, config) -> int:
    J = _resolve_algebra(args.algebra, config)
    if args.k < 0:
        raise ValueError("k must be >= 0")
    lam = _parse_param_value(args.lam, "lambda")
    mu = _parse_param_value(args.mu, "mu")
    want_b = args.lam is not None or args.mu is not None
    if args.route == "source":
        if J.kind == "rank1":
            value = iterate_source("rc", None, args.k)
        elif J.kind == "quadratic":
            value = iterate_source("conformal", J.n, args.k)
        else:
            print("source route unsupported for matrix2", file=sys.stderr)
            return EXIT_USAGE
    else:
        fam = rodrigues_c(J, args.k) if args.route == "rodrigues" else recurrence_c(J, args.k)
        value = fam.value
        if want_b:
            shift = ps(gr(Fraction(J.n, J.r)))
            value = value.substitute_params(
                {"s": param("lambda") - shift, "t": param("mu") - shift}
            )
    if want_b or args.route == "source":
        if lam is not None:
            value = value.substitute_param("lambda", lam)
        if mu is not None:
            value = value.substitute_param("mu", mu)
    fmt = args.format or config.get("format", "text")
    print(render_poly(value, fmt).payload)
    return EXIT_OK


def _cmd_apply(args, config) -> int:
    J = _resolve_algebra(args.algebra, config)
    if args.k < 0:
        raise ValueError("k must be >= 0")
    lam = _parse_param_value(args.lam, "lambda")
    mu = _parse_param_value(args.mu, "mu")
    xspace = VarSpace(("x", J.n))
    f = parse_poly(args.f, xspace)
    g = parse_poly(args.g, xspace).rename_blocks({"x": "y"})
    result = bidiff_apply(J, args.k, lam, mu, f, g)
    fmt = args.format or config.get("format", "text")
    print(render_poly(result, fmt).payload)
    return EXIT_OK


def _cmd_verify(args, config) -> int:
    max_k = args.max_k
    if max_k is None and "max_k" in config:
        max_k = int(config["max_k"])
    results, notes = run_suites(args.suite, max_k=max_k, seed=args.seed)
    print(format_report(results, notes))
    if all(r.passed for r in results):
        return EXIT_OK
    return EXIT_VIOLATION


def main(argv=None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    try:
        config = _read_config(args.config)
        if args.command == "symbol":
            return _cmd_symbol(args, config)
        if args.command == "apply":
            return _cmd_apply(args, config)
        return _cmd_verify(args, config)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DivisibilityViolation as exc:
        print(f"divisibility violation: {exc}", file=sys.stderr)
        return EXIT_DIVISIBILITY
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BidiffError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
