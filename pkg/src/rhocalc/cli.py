"""Command-line front end: ``rhocalc eval|diff|limit|scalar|quotient|suite``.

Exit codes: 0 success or HOLDS, 1 error, 2 FAILS, 3 INDISTINGUISHABLE, 64 usage.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from .asymfunc import differentiate, evaluate
from .calculus import continuity_check, derivative_quotient, differentiability_check, scalar_detect
from .dsl import VARIABLES, constant_value, parse, to_source
from .errors import RhoCalcError
from .jsonio import dumps_series
from .lcfield import DEFAULT_ORDER, DEFAULT_TAU, SeriesVerdict, exponent, format_series, zero_threshold
from .suites import SUITES, run_suite

EXIT_OK, EXIT_ERROR, EXIT_FAILS, EXIT_UNDECIDED, EXIT_USAGE = 0, 1, 2, 3, 64
VERDICT_EXIT = {
    SeriesVerdict.HOLDS: EXIT_OK,
    SeriesVerdict.FAILS: EXIT_FAILS,
    SeriesVerdict.INDISTINGUISHABLE: EXIT_UNDECIDED,
}
MOLLIFIERS = ("gaussian",)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


@dataclass(frozen=True)
class Config:
    order: Fraction = DEFAULT_ORDER
    tau: float = DEFAULT_TAU
    seed: int = 42
    samples: int = 20
    deriv_depth: int = 3
    mollifier: str = "gaussian"

    def __post_init__(self):
        if self.order <= 0:
            raise UsageError("order must be positive")
        if not self.tau > 0:
            raise UsageError("tau must be positive")
        if self.samples < 1:
            raise UsageError("samples must be at least 1")
        if self.deriv_depth < 0:
            raise UsageError("derivative depth must be non-negative")
        if self.seed < 0:
            raise UsageError("seed must be unsigned")


def _default_order() -> str:
    return os.environ.get("RHOCALC_ORDER", str(DEFAULT_ORDER))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", default=None, help="knowledge order N (default 10, or $RHOCALC_ORDER)")
    common.add_argument("--tau", type=float, default=DEFAULT_TAU, help="zero threshold (default 1e-12)")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--samples", type=int, default=20, help="sample points for null tests")
    common.add_argument("--depth", type=int, default=3, dest="deriv_depth", help="derivative depth D for null tests")
    common.add_argument("--mollifier", default="gaussian", help="kernel behind delta and heaviside")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = _Parser(prog="rhocalc", description="Asymptotic numbers and asymptotic functions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", parents=[common], help="value of an expression at a point")
    p.add_argument("--expr", required=True)
    p.add_argument("--at", required=True)
    p.add_argument("--domain")

    p = sub.add_parser("diff", parents=[common], help="symbolic partial derivative")
    p.add_argument("--expr", required=True)
    p.add_argument("--wrt", default="x", choices=sorted(VARIABLES))
    p.add_argument("--times", type=int, default=1)
    p.add_argument("--at", help="also print the value of the derivative here")
    p.add_argument("--domain")

    p = sub.add_parser("limit", parents=[common], help="continuity or differentiability witnesses")
    p.add_argument("--expr", required=True)
    p.add_argument("--at", required=True)
    p.add_argument("--mode", choices=("continuity", "differential"), default="continuity")
    p.add_argument("--nmax", type=int, default=5)
    p.add_argument("--domain")

    p = sub.add_parser("scalar", parents=[common], help="decide whether the gradient vanishes")
    p.add_argument("--expr", required=True)
    p.add_argument("--domain", required=True)

    p = sub.add_parser("quotient", parents=[common], help="difference quotient (F(x+h) - F(x))/h")
    p.add_argument("--expr", required=True)
    p.add_argument("--at", required=True)
    p.add_argument("--h", required=True, help="infinitesimal increment, e.g. s or 0.5*s^2")
    p.add_argument("--domain")

    p = sub.add_parser("suite", parents=[common], help="run a property suite")
    p.add_argument("--name", required=True, choices=list(SUITES))
    return parser


def _config(args) -> Config:
    raw = args.order if args.order is not None else _default_order()
    try:
        order = exponent(raw)
    except (ValueError, ZeroDivisionError, RhoCalcError) as exc:
        raise UsageError(f"bad order {raw!r}: {exc}") from None
    return Config(order, args.tau, args.seed, args.samples, args.deriv_depth, args.mollifier)


def _show(value, as_json: bool) -> str:
    return dumps_series(value) if as_json else format_series(value)


def _cmd_eval(args, cfg: Config, out) -> int:
    prog = parse(args.expr, args.domain, args.at, cfg.order)
    print(_show(evaluate(prog.function, prog.bindings["at"], cfg.order), args.json), file=out)
    return EXIT_OK


def _cmd_diff(args, cfg: Config, out) -> int:
    if args.times < 0:
        raise UsageError("--times must be non-negative")
    prog = parse(args.expr, args.domain, args.at, cfg.order)
    d = prog.domain.d
    alpha = [0] * d
    axis = VARIABLES[args.wrt]
    if axis >= d:
        raise UsageError(f"{args.wrt} is not a coordinate of {prog.domain}")
    alpha[axis] = args.times
    dF = differentiate(prog.function, alpha)
    print(to_source(dF.expr), file=out)
    if args.at:
        print(_show(evaluate(dF, prog.bindings["at"], cfg.order), args.json), file=out)
    return EXIT_OK


def _cmd_limit(args, cfg: Config, out) -> int:
    if args.nmax < 1:
        raise UsageError("--nmax must be at least 1")
    prog = parse(args.expr, args.domain, args.at, cfg.order)
    check = continuity_check if args.mode == "continuity" else differentiability_check
    report = check(prog.function, prog.bindings["at"], args.nmax, seed=cfg.seed)
    print(report.to_json() if args.json else report.table(), file=out)
    return VERDICT_EXIT[report.verdict]


def _cmd_scalar(args, cfg: Config, out) -> int:
    prog = parse(args.expr, args.domain, None, cfg.order)
    report = scalar_detect(prog.function, cfg.samples, cfg.deriv_depth, cfg.seed, cfg.order)
    if args.json:
        const = None if report.constant is None else dumps_series(report.constant)
        print(f'{{"verdict": "{report.is_scalar.name}", "constant": {const or "null"}}}', file=out)
    else:
        print(report.summary(), file=out)
    return VERDICT_EXIT[report.is_scalar]


def _cmd_quotient(args, cfg: Config, out) -> int:
    prog = parse(args.expr, args.domain, args.at, cfg.order)
    h = constant_value(parse(args.h).expr, cfg.order)
    if not h.is_real():
        raise UsageError("--h must be real")
    q = derivative_quotient(prog.function, prog.bindings["at"], h.re)
    print(_show(q, args.json), file=out)
    return EXIT_OK


def _cmd_suite(args, cfg: Config, out) -> int:
    result = run_suite(args.name, cfg.seed, cfg.order)
    print(result.to_json() if args.json else "\n".join(result.lines()), file=out)
    return VERDICT_EXIT[result.verdict]


COMMANDS = {
    "eval": _cmd_eval,
    "diff": _cmd_diff,
    "limit": _cmd_limit,
    "scalar": _cmd_scalar,
    "quotient": _cmd_quotient,
    "suite": _cmd_suite,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        cfg = _config(args)
        if cfg.mollifier not in MOLLIFIERS:
            raise ValueError(f"unsupported mollifier {cfg.mollifier!r}; available: {', '.join(MOLLIFIERS)}")
        with zero_threshold(cfg.tau):
            return COMMANDS[args.command](args, cfg, out)
    except UsageError as exc:
        print(f"rhocalc {args.command}: usage error: {exc}", file=err)
        return EXIT_USAGE
    except (RhoCalcError, ValueError, ArithmeticError, KeyError, NameError) as exc:
        print(f"rhocalc {args.command}: {type(exc).__name__}: {exc}", file=err)
        return EXIT_ERROR


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
