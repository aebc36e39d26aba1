"""Phase-diagram scans of solution counts over tau with bisected transitions."""

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional

import numpy as np

from sosggm.base_solver import nontrivial
from sosggm.config import get_settings
from sosggm.exceptions import ConstraintViolation, NoTransition
from sosggm.logging_manager import get_logger
from sosggm.metrics_manager import MetricsManager
from sosggm.models import PeriodicSolution, ScanRow
from sosggm.params import theta_from_tau
from sosggm.periodic_systems import SOLVER_REGISTRY, get_solver, solve
from sosggm.polyroot import bisect_transition
from sosggm.symmetry import dedup
from sosggm.utils import join_reals, render_csv

logger = get_logger(__name__)

SCAN_HEADER = ("tau", "q", "branch", "raw_count", "dedup_count", "roots", "transition")


def branch_label(q: int, symmetry: str = "all", branch: Optional[str] = None) -> str:
    """Name written in the branch column: a registry key or the symmetry side."""
    return branch if branch is not None else symmetry


def branch_solutions(
    k: int, tau: float, q: int, symmetry: str = "all", branch: Optional[str] = None
) -> List[PeriodicSolution]:
    """Raw solutions of one registry branch, or of every branch with period q on one side."""
    params = theta_from_tau(tau, k)
    if branch is not None:
        if branch not in SOLVER_REGISTRY:
            raise ConstraintViolation(f"Unknown branch {branch}")
        return get_solver(branch).solve(params)
    return solve(params, q, symmetry)


def scan_row(
    k: int,
    tau: float,
    q: int,
    symmetry: str = "all",
    branch: Optional[str] = None,
    transition: bool = False,
) -> ScanRow:
    """
    Count the solutions at one tau.

    raw_count is the number of nontrivial raw words plus one for the
    constant word; dedup_count is the number of boundary-law classes.

    Args:
        k (int): Tree order
        tau (float): Parameter value
        q (int): Period
        symmetry (str): "mirror", "nonmirror" or "all" (default: "all")
        branch (Optional[str]): Registry key overriding q and symmetry
        transition (bool): Mark the row as a located transition

    Returns:
        ScanRow: Counts and the sorted u_{-1} values of the nontrivial words
    """
    raw = branch_solutions(k, tau, q, symmetry, branch)
    extra = nontrivial(raw)
    roots = sorted({round(s.u_m1, 12) for s in extra})
    return ScanRow(
        tau=tau,
        q=q,
        branch=branch_label(q, symmetry, branch),
        raw_count=len(extra) + 1,
        dedup_count=len(dedup(raw)),
        roots=roots,
        transition=transition,
    )


def dedup_counter(k: int, q: int, symmetry: str = "all", branch: Optional[str] = None) -> Callable[[float], int]:
    """Class count as a function of tau, for bisection."""
    return lambda tau: scan_row(k, tau, q, symmetry, branch).dedup_count


def run_scan(
    k: int,
    q: int,
    tau_min: float,
    tau_max: float,
    steps: int,
    symmetry: str = "all",
    branch: Optional[str] = None,
    tol: float = 1e-9,
) -> List[ScanRow]:
    """
    Scan tau over a uniform grid and bisect every change of the class count.

    Grid points are evaluated concurrently on settings.THREADS workers and
    returned in tau order; located transitions follow as flagged rows.

    Where two roots of a closure meet (a double root, as at tau_0 for the
    3-periodic mirror branch), root isolation merges roots closer than
    1e-6 of its search interval. Such a transition is only resolved to that
    width, not to tol, and shows up as a narrow window of lower count.

    Args:
        k (int): Tree order
        q (int): Period
        tau_min (float): First grid point, > 2
        tau_max (float): Last grid point
        steps (int): Number of grid intervals
        symmetry (str): "mirror", "nonmirror" or "all" (default: "all")
        branch (Optional[str]): Registry key overriding q and symmetry
        tol (float): Bisection bracket width (default: 1e-9)

    Returns:
        List[ScanRow]: Grid rows followed by transition rows
    """
    if not tau_min > 2.0 or tau_max < tau_min or steps < 1:
        raise ConstraintViolation(
            f"Need 2 < tau_min <= tau_max and steps >= 1, got {tau_min}, {tau_max}, {steps}"
        )
    if branch is not None:
        q = int(SOLVER_REGISTRY[branch]["q"]) if branch in SOLVER_REGISTRY else q
    taus = [float(t) for t in np.linspace(tau_min, tau_max, steps + 1)]
    logger.info(f"Scanning {len(taus)} values of tau for k={k}, q={q}", ":hourglass:")

    with ThreadPoolExecutor(max_workers=max(1, get_settings().THREADS)) as pool:
        rows = list(pool.map(lambda tau: scan_row(k, tau, q, symmetry, branch), taus))

    metrics = MetricsManager(source_name="scan")
    count = dedup_counter(k, q, symmetry, branch)
    transitions: List[ScanRow] = []
    for left, right in zip(rows, rows[1:]):
        if left.dedup_count == right.dedup_count:
            continue
        try:
            tau_c = bisect_transition(count, left.tau, right.tau, tol=tol, metrics_manager=metrics)
        except NoTransition:
            continue
        logger.info(
            f"Count {left.dedup_count} -> {right.dedup_count} near tau = {tau_c:.10g}",
            ":triangular_flag_on_post:",
        )
        transitions.append(scan_row(k, tau_c, q, symmetry, branch, transition=True))
    return rows + transitions


def transition_taus(rows: List[ScanRow]) -> List[float]:
    """Taus of the flagged transition rows."""
    return [row.tau for row in rows if row.transition]


def scan_csv(rows: List[ScanRow]) -> str:
    """Render scan rows with roots semicolon-joined at 12 significant digits."""
    return render_csv(
        SCAN_HEADER,
        (
            (row.tau, row.q, row.branch, row.raw_count, row.dedup_count, join_reals(row.roots), int(row.transition))
            for row in rows
        ),
    )
