"""Main entry point for the sosggm command line."""

import argparse
import sys
from typing import Any, Callable, Dict, List, Optional

from sosggm import __version__
from sosggm.base_solver import nontrivial
from sosggm.boundary_law import from_word, residual_di1
from sosggm.exceptions import (
    BallTooLarge,
    ConstraintViolation,
    EnumerationTooLarge,
    InvalidTemperature,
    OutputError,
    SosGgmError,
)
from sosggm.figures import FIGURES, figure_data
from sosggm.ggm import build_ball, mixed_marginal, pinned_marginal
from sosggm.logging_manager import get_logger
from sosggm.models import MarginalMode, Params, PeriodicSolution
from sosggm.params import theta_from_tau
from sosggm.periodic_systems import (
    SOLVER_REGISTRY,
    branches_for,
    get_solver,
    search_periodic_numeric,
    solve,
)
from sosggm.polyroot import bisect_transition, find_critical_tau
from sosggm.scan import dedup_counter, run_scan, scan_csv
from sosggm.symmetry import canonical_form, classify, dedup
from sosggm.systems.mirror import x3_family
from sosggm.systems.nonmirror import uy22_family, x3a_family
from sosggm.utils import emit, join_reals, render_csv, render_json
from sosggm.verifier import SolutionVerifier

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_OUTPUT = 3
EXIT_TOO_LARGE = 4
MAX_EXACT_Q = 5

# --- Critical-value Registry --- #
# Maps family names (used in `sosggm critical`) to polynomial builders; None means the type-up class count
CRITICAL_FAMILIES: Dict[str, Optional[Callable]] = {
    "x3": x3_family,
    "x3a": x3a_family,
    "uy22": uy22_family,
    "up": None,
}
# --- End Critical-value Registry --- #


def ordered_classes(solutions: List[PeriodicSolution]) -> List[PeriodicSolution]:
    """Boundary-law classes, nontrivial ones first, the constant law last."""
    classes = dedup(solutions)
    return nontrivial(classes) + [s for s in classes if s.minimal_period == 1]


def collect_solutions(params: Params, q: int, symmetry: str, experimental: bool = False) -> List[PeriodicSolution]:
    """Solutions listed by `solve` and indexed by `ggm`."""
    if q > MAX_EXACT_Q:
        if not experimental:
            raise ConstraintViolation(f"q = {q} needs --experimental")
        return ordered_classes(search_periodic_numeric(params, q))
    return ordered_classes(solve(params, q, symmetry))


def solution_record(solution: PeriodicSolution) -> Dict[str, Any]:
    """JSON record of one solution."""
    return {
        "k": solution.params.k,
        "tau": solution.params.tau,
        "q": solution.q,
        "word": list(solution.word),
        "symmetry": classify(solution.word, solution.q).kind.value,
        "canonical": canonical_form(solution.word, solution.q).word,
        "residual_system": solution.system_residual,
        "residual_di1": residual_di1(from_word(solution)),
        "branch": solution.branch.value,
        "family": solution.family,
        "minimal_period": solution.minimal_period,
        "experimental": solution.experimental,
        "exhaustive": solution.exhaustive,
    }


def cmd_solve(args: argparse.Namespace) -> int:
    """List the boundary-law classes of period q at (k, tau)."""
    params = theta_from_tau(args.tau, args.k)
    solutions = collect_solutions(params, args.q, args.symmetry, args.experimental)
    records = [solution_record(s) for s in solutions]
    if args.format == "json":
        text = render_json({"solutions": records})
    elif args.format == "csv":
        text = render_csv(
            ("k", "tau", "q", "branch", "symmetry", "word", "residual_system", "residual_di1"),
            (
                (r["k"], r["tau"], r["q"], r["branch"], r["symmetry"], join_reals(r["word"]),
                 r["residual_system"], r["residual_di1"])
                for r in records
            ),
        )
    else:
        lines = [f"k={params.k} tau={params.tau:.12g} theta={params.theta:.12g}: {len(records)} classes"]
        lines += [
            f"  [{i}] q={r['q']} {r['branch']}/{r['symmetry']} word=({join_reals(r['word'])})"
            for i, r in enumerate(records)
        ]
        text = "\n".join(lines) + "\n"
    emit(text, args.out)
    if args.metrics:
        names = branches_for(args.q, args.symmetry) if args.q <= MAX_EXACT_Q else []
        for name in names:
            get_solver(name).metrics_manager.display_metrics()
    return EXIT_OK


def cmd_scan(args: argparse.Namespace) -> int:
    """Tabulate solution counts over a tau grid."""
    rows = run_scan(
        args.k, args.q, args.tau_min, args.tau_max, args.steps, symmetry=args.symmetry, branch=args.branch
    )
    emit(scan_csv(rows), args.out)
    return EXIT_OK


def cmd_figure(args: argparse.Namespace) -> int:
    """Emit the data behind one of the closure plots."""
    emit(figure_data(args.name, tau=args.tau, grid=args.grid), args.out)
    return EXIT_OK


def cmd_ggm(args: argparse.Namespace) -> int:
    """Emit the marginal table of the GGM of one solution on a ball."""
    params = theta_from_tau(args.tau, args.k)
    solutions = collect_solutions(params, args.q, args.symmetry)
    if not 0 <= args.solution_index < len(solutions):
        raise ConstraintViolation(f"Solution index {args.solution_index} is not in 0..{len(solutions) - 1}")
    law = from_word(solutions[args.solution_index])
    ball = build_ball(args.k, args.radius)
    mode = MarginalMode(args.mode)
    trunc = args.trunc if mode == MarginalMode.TRUNCATED else None
    if args.pinned is not None:
        table = pinned_marginal(ball, law, args.pinned, mode, trunc)
    else:
        table = mixed_marginal(ball, law, mode, trunc)
    payload = {
        "edges": [list(edge) for edge in table.edges],
        "support": table.support.tolist(),
        "probs": [float(p) for p in table.probs],
        "total": table.total,
        "mode": table.mode.value,
        "q": table.q,
        "pinned": table.pinned,
        "tail_bound": table.tail_bound,
        "law": list(law.z),
    }
    emit(render_json(payload), args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    """Run the consistency checks and report them."""
    report = SolutionVerifier(theta_from_tau(args.tau, args.k)).run()
    if args.format == "json":
        text = render_json(report.model_dump())
    else:
        lines = [f"verify k={report.k} tau={report.tau:.12g}: {'PASS' if report.passed else 'FAIL'}"]
        lines += [f"  {name}: {'ok' if ok else 'FAILED'}" for name, ok in report.checks.items()]
        lines += [f"  count {name} = {value}" for name, value in sorted(report.counts.items())]
        lines += [f"  - {item}" for item in report.failures]
        text = "\n".join(lines) + "\n"
    emit(text, args.out)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_critical(args: argparse.Namespace) -> int:
    """Bisect the tau at which the solution count of a family changes."""
    family = CRITICAL_FAMILIES[args.family]
    if family is None:
        tau_c = bisect_transition(
            dedup_counter(args.k, 4, branch="q4_type_up"), args.tau_min, args.tau_max, tol=args.tol
        )
    else:
        tau_c = find_critical_tau(family, args.k, args.tau_min, args.tau_max, tol=args.tol)
    if args.format == "json":
        text = render_json({"family": args.family, "k": args.k, "tau": tau_c})
    else:
        text = f"{tau_c:.12g}\n"
    emit(text, args.out)
    return EXIT_OK


def _add_model_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--k", type=int, default=2, help="Tree order k >= 2 (default: 2)")
    parser.add_argument("--tau", type=float, required=True, help="Parameter tau = theta + 1/theta > 2")


def _add_out_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", type=str, default=None, help="Output path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    """
    Build the argument parser with one subcommand per operation.

    Returns:
        argparse.ArgumentParser: Configured parser
    """
    parser = argparse.ArgumentParser(
        prog="sosggm",
        description="Periodic boundary laws and gradient Gibbs measures of the SOS model on Cayley trees",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="List periodic boundary-law classes")
    _add_model_flags(p)
    p.add_argument("--q", type=int, required=True, help="Period (1..5, or up to 12 with --experimental)")
    p.add_argument("--symmetry", choices=["mirror", "nonmirror", "all"], default="all")
    p.add_argument("--experimental", action="store_true", help="Numeric search for q > 5")
    p.add_argument("--format", choices=["json", "csv", "text"], default="json")
    p.add_argument("--metrics", action="store_true", help="Print solver metrics to stderr")
    _add_out_flag(p)
    p.set_defaults(handler=cmd_solve)

    p = sub.add_parser("scan", help="Scan solution counts over tau")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--q", type=int, default=3)
    p.add_argument("--symmetry", choices=["mirror", "nonmirror", "all"], default="all")
    p.add_argument("--branch", choices=sorted(SOLVER_REGISTRY), default=None, help="Scan a single branch")
    p.add_argument("--tau-min", type=float, required=True)
    p.add_argument("--tau-max", type=float, required=True)
    p.add_argument("--steps", type=int, default=300)
    _add_out_flag(p)
    p.set_defaults(handler=cmd_scan)

    p = sub.add_parser("figure", help="Emit figure data as CSV")
    p.add_argument("name", choices=sorted(FIGURES))
    p.add_argument("--tau", type=float, default=8.0)
    p.add_argument("--grid", type=int, default=2000)
    _add_out_flag(p)
    p.set_defaults(handler=cmd_figure)

    p = sub.add_parser("ggm", help="Marginal table of a GGM on a ball")
    _add_model_flags(p)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--symmetry", choices=["mirror", "nonmirror", "all"], default="all")
    p.add_argument("--solution-index", type=int, default=0)
    p.add_argument("--radius", type=int, default=0)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--pinned", type=int, default=None, metavar="S", help="Pin the root class s")
    group.add_argument("--mixed", action="store_true", help="Mixture over s (default)")
    p.add_argument("--mode", choices=[m.value for m in MarginalMode], default=MarginalMode.EXACT.value)
    p.add_argument("--trunc", type=int, default=40)
    _add_out_flag(p)
    p.set_defaults(handler=cmd_ggm)

    p = sub.add_parser("verify", help="Check solutions, laws and known counts")
    _add_model_flags(p)
    p.add_argument("--format", choices=["json", "text"], default="text")
    _add_out_flag(p)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("critical", help="Bisect a critical value of tau")
    p.add_argument("--family", choices=sorted(CRITICAL_FAMILIES), required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--tau-min", type=float, required=True)
    p.add_argument("--tau-max", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--format", choices=["json", "text"], default="text")
    _add_out_flag(p)
    p.set_defaults(handler=cmd_critical)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Main application entry point.

    Parses arguments, dispatches to the subcommand and maps errors to exit
    codes: 2 usage, 3 unwritable output, 4 oversized enumeration, 1 any
    other failure.

    Args:
        argv (Optional[List[str]]): Arguments (default: sys.argv[1:])

    Returns:
        int: Process exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_OK

    try:
        return args.handler(args)
    except (InvalidTemperature, ConstraintViolation) as e:
        logger.error(str(e), ":no_entry:")
        return EXIT_USAGE
    except OutputError as e:
        logger.error(str(e), ":floppy_disk:")
        return EXIT_OUTPUT
    except (EnumerationTooLarge, BallTooLarge) as e:
        logger.error(str(e), ":elephant:")
        return EXIT_TOO_LARGE
    except SosGgmError as e:
        logger.critical(f"{type(e).__name__}: {e}")
        return EXIT_FAILED


def run() -> None:
    """Console-script entry point."""
    sys.exit(main())


if __name__ == "__main__":
    run()
