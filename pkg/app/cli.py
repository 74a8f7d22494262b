"""
Command-line interface for the isoperimetric profile toolkit
Subcommands: constants, profile, verify, oracle
"""

import argparse
import json
import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import NoReturn

from app.config import settings
from app.exceptions import ConfigurationError, DomainError, SolverError
from app.services import export, oracle, profile, verification
from app.services.geometry import NotchParam
from app.services.solvers import Breakpoints, get_breakpoints

logger: logging.Logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_SOLVER = 2
EXIT_USAGE = 64

ORACLE_TOL: float = 1e-9


class IsoprofileArgumentParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with 64"""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _precision(value: str) -> int:
    n = int(value)
    if not 4 <= n <= 15:
        raise argparse.ArgumentTypeError(f"precision must lie in [4, 15], got {n}")
    return n


def _grid(value: str) -> tuple[int, int]:
    try:
        return verification.parse_grid(value)
    except ConfigurationError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def build_parser() -> argparse.ArgumentParser:
    parser = IsoprofileArgumentParser(
        prog="isoprofile",
        description="Isoperimetric profile of the notched unit square",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    constants = sub.add_parser("constants", help="Print theta_max, t0, alpha, beta, gamma")
    constants.add_argument("--json", action="store_true", help="Flat JSON object output")
    constants.add_argument("--precision", type=_precision, default=6)

    sweep = sub.add_parser("profile", help="Write f_a(t) on a uniform t-grid as CSV")
    sweep.add_argument("--a", type=float, required=True)
    sweep.add_argument("--n", type=int, default=200)
    sweep.add_argument("--out", type=Path, required=True)
    sweep.add_argument("--svg", type=Path, default=None, help="Also write an SVG plot")

    verify = sub.add_parser("verify", help="Run an invariant suite")
    verify.add_argument("suite", choices=[s.value for s in verification.Suite])
    verify.add_argument("--seed", type=int, default=settings.verify_seed)
    verify.add_argument("--grid", type=_grid, default=_grid(settings.verify_grid))
    verify.add_argument("--resolution", type=int, default=settings.oracle_resolution)

    compare = sub.add_parser("oracle", help="Compare the enumerated minimum with f_a(t)")
    compare.add_argument("--a", type=float, required=True)
    compare.add_argument("--t", type=float, required=True)
    compare.add_argument("--resolution", type=int, default=settings.oracle_resolution)
    return parser


def cmd_constants(bp: Breakpoints, precision: int, as_json: bool) -> str:
    values = {
        "theta_max": bp.theta_max,
        "t0": bp.t0,
        "alpha": bp.alpha,
        "beta": bp.beta,
        "gamma": bp.gamma,
    }
    if as_json:
        return json.dumps({k: float(f"{v:.{precision}g}") for k, v in values.items()}) + "\n"
    lines = [f"{k} = {v:.{precision}g}" for k, v in values.items()]
    lines[-1] += " (1/(1+pi))"
    return "\n".join(lines) + "\n"


def cmd_profile(bp: Breakpoints, a: float, n: int, out: Path, svg: Path | None) -> str:
    notch = NotchParam.of(a)
    rows = export.profile_rows(notch, n, bp)
    export.write_csv(rows, out)
    if svg is not None:
        export.write_svg(notch, rows, svg, bp)
    return f"wrote {len(rows)} rows to {out}\n"


def cmd_verify(
    bp: Breakpoints, suite: str, seed: int, grid: tuple[int, int], resolution: int
) -> tuple[str, bool]:
    results = verification.run_suite(suite, seed, grid, resolution, bp)
    return verification.format_report(results), all(r.passed for r in results)


def cmd_oracle(bp: Breakpoints, a: float, t: float, resolution: int) -> tuple[str, bool]:
    point = profile.f(a, t, bp)
    best = oracle.oracle_min(a, t, resolution, bp.cfg)
    gap = best.perimeter - point.perimeter
    agrees = abs(gap) <= ORACLE_TOL and best.region.kind in point.minimizers
    report = "\n".join(
        [
            f"a = {a:.12g}",
            f"t = {t:.12g}",
            f"oracle_min = {best.perimeter:.12g}",
            f"argmin = {best.region.kind}",
            f"f_a(t) = {point.perimeter:.12g}",
            f"minimizers = {point.minimizer_label}",
            f"gap = {gap:.3e}",
            "PASS" if agrees else "FAIL",
        ]
    )
    return report + "\n", agrees


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point of the `isoprofile` console script; returns the exit code"""
    logging.basicConfig(
        level=getattr(logging, settings.log_level),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )
    args = build_parser().parse_args(argv)
    ok = True
    try:
        bp = get_breakpoints(settings.solver_config())
        match args.command:
            case "constants":
                output = cmd_constants(bp, args.precision, args.json)
            case "profile":
                output = cmd_profile(bp, args.a, args.n, args.out, args.svg)
            case "verify":
                output, ok = cmd_verify(bp, args.suite, args.seed, args.grid, args.resolution)
            case "oracle":
                output, ok = cmd_oracle(bp, args.a, args.t, args.resolution)
            case _:
                raise ConfigurationError(f"unknown command {args.command}")
    except SolverError as e:
        logger.error(f"Solver failure: {e}")
        return EXIT_SOLVER
    except (DomainError, ConfigurationError) as e:
        logger.error(f"Invalid input: {e}")
        print(f"isoprofile: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        logger.error(f"I/O error: {e}")
        return EXIT_FAILED
    sys.stdout.write(output)
    return EXIT_OK if ok else EXIT_FAILED


if __name__ == "__main__":
    raise SystemExit(main())
