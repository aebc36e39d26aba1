"""Entry points for the periodic boundary-law systems with q <= 5 and the numeric search."""

import math
import threading
from typing import Dict, List, Optional, Tuple, Type

from sosggm.base_solver import BranchSolver
from sosggm.exceptions import ConstraintViolation
from sosggm.models import Params, PeriodicSolution
from sosggm.symmetry import dedup
from sosggm.systems import (
    NumericSearch,
    Q1Solver,
    Q2MirrorSolver,
    Q3MirrorSolver,
    Q3NonMirrorSolver,
    Q4MirrorSolver,
    Q4NonMirrorSolver,
    Q4TypeUpSolver,
    Q5MirrorSolver,
    Q5NonMirrorSolver,
)
from sosggm.systems.mirror import g_polynomial
from sosggm.systems.nonmirror import zeta_polynomial

# --- Solver Registry --- #
# Maps branch names (used in CLI and scans) to their classes, period and symmetry side
SOLVER_REGISTRY: Dict[str, Dict[str, object]] = {
    "q1": {"class": Q1Solver, "q": 1, "symmetry": "mirror"},
    "q2_mirror": {"class": Q2MirrorSolver, "q": 2, "symmetry": "mirror"},
    "q3_mirror": {"class": Q3MirrorSolver, "q": 3, "symmetry": "mirror"},
    "q4_mirror": {"class": Q4MirrorSolver, "q": 4, "symmetry": "mirror"},
    "q5_mirror": {"class": Q5MirrorSolver, "q": 5, "symmetry": "mirror"},
    "q3_nonmirror": {"class": Q3NonMirrorSolver, "q": 3, "symmetry": "nonmirror"},
    "q4_nonmirror": {"class": Q4NonMirrorSolver, "q": 4, "symmetry": "nonmirror"},
    "q4_type_up": {"class": Q4TypeUpSolver, "q": 4, "symmetry": "nonmirror"},
    "q5_nonmirror": {"class": Q5NonMirrorSolver, "q": 5, "symmetry": "nonmirror"},
}
# --- End Solver Registry --- #

MAX_NUMERIC_Q = 12

_instances: Dict[Tuple[str, int], BranchSolver] = {}
_instances_lock = threading.Lock()


def get_solver(name: str) -> BranchSolver:
    """
    Return the shared solver instance registered under name.

    Args:
        name (str): Registry key, e.g. "q4_mirror"

    Returns:
        BranchSolver: Solver instance (created on first use)

    Raises:
        KeyError: If the name is not registered
    """
    with _instances_lock:
        key = (name, 0)
        if key not in _instances:
            solver_class: Type[BranchSolver] = SOLVER_REGISTRY[name]["class"]  # type: ignore[assignment]
            _instances[key] = solver_class()
        return _instances[key]


def _numeric_solver(q: int, grid: int) -> BranchSolver:
    with _instances_lock:
        key = (f"numeric_q{q}", grid)
        if key not in _instances:
            _instances[key] = NumericSearch(q, grid)
        return _instances[key]


def branches_for(q: int, symmetry: str = "all") -> List[str]:
    """Registry names of the branches with period q and the requested symmetry side."""
    return [
        name
        for name, entry in SOLVER_REGISTRY.items()
        if entry["q"] == q and symmetry in ("all", entry["symmetry"])
    ]


def solve_q1(params: Params) -> List[PeriodicSolution]:
    """The constant word, the only 1-periodic solution."""
    return get_solver("q1").solve(params)


def solve_q2_mirror(params: Params) -> List[PeriodicSolution]:
    """Words (1, x) closing after two steps."""
    return get_solver("q2_mirror").solve(params)


def solve_q3_mirror(params: Params) -> List[PeriodicSolution]:
    """Words (1, x, x), including the trivial root x = 1."""
    return get_solver("q3_mirror").solve(params)


def solve_q4_mirror(params: Params) -> List[PeriodicSolution]:
    """Words (1, x, y, x) with y = g(x) != 1."""
    return get_solver("q4_mirror").solve(params)


def solve_q5_mirror(params: Params) -> List[PeriodicSolution]:
    """Words (1, x, y, y, x) at the positive fixed points of phi."""
    return get_solver("q5_mirror").solve(params)


def solve_q3_nonmirror(params: Params) -> List[PeriodicSolution]:
    """Words (1, 1, x) and (1, x, 1)."""
    return get_solver("q3_nonmirror").solve(params)


def solve_q4_nonmirror(params: Params) -> List[PeriodicSolution]:
    """Words (1, y, y, 1) and (1, 1, y, y)."""
    return get_solver("q4_nonmirror").solve(params)


def solve_q4_type_up(params: Params) -> List[PeriodicSolution]:
    """Alternating-ones words (1, y, 1, x)."""
    return get_solver("q4_type_up").solve(params)


def solve_q5_nonmirror(params: Params) -> List[PeriodicSolution]:
    """Words (1, y, y, 1, x) with y = eta(x)."""
    return get_solver("q5_nonmirror").solve(params)


def solve(params: Params, q: int, symmetry: str = "all") -> List[PeriodicSolution]:
    """
    Collect the raw solutions of every registered branch with period q.

    Args:
        params (Params): Model parameters
        q (int): Period, 1..5
        symmetry (str): "mirror", "nonmirror" or "all" (default: "all")

    Returns:
        List[PeriodicSolution]: Raw solutions, trivial words included
    """
    solutions: List[PeriodicSolution] = []
    for name in branches_for(q, symmetry):
        solutions.extend(get_solver(name).solve(params))
    return solutions


def search_periodic_numeric(params: Params, q_max: int, grid: int = 200) -> List[PeriodicSolution]:
    """
    Blind numeric search for periodic words with period up to q_max.

    Args:
        params (Params): Model parameters
        q_max (int): Largest period, at most 12
        grid (int): Grid points per axis of the (u_{-1}, u_1) scan (default: 200)

    Returns:
        List[PeriodicSolution]: Deduplicated classes tagged experimental

    Raises:
        ConstraintViolation: If q_max is outside 1..12
    """
    if not 1 <= q_max <= MAX_NUMERIC_Q:
        raise ConstraintViolation(f"q_max must lie in 1..{MAX_NUMERIC_Q}, got {q_max}")
    found: List[PeriodicSolution] = []
    for q in range(1, q_max + 1):
        found.extend(_numeric_solver(q, grid).solve(params))
    return dedup(found)


def q4_mirror_closed_forms(tau: float) -> List[Optional[float]]:
    """
    Closed-form roots x1..x4 of the k = 2 4-periodic mirror closure.

    The reduced closure is (wx)^2 + tau (wx) + tau = 0 with w = 2x - tau, so
    wx = m with m = (-tau +- sqrt(tau^2 - 4 tau)) / 2 and
    x = (tau +- sqrt(tau^2 + 8m)) / 4. x1, x2 exist for tau >= 4 and
    x3, x4 for tau >= 2(1 + sqrt 5); None marks a root outside its domain.
    """
    out: List[Optional[float]] = [None, None, None, None]
    if tau < 4.0:
        return out
    root = math.sqrt(tau * tau - 4.0 * tau)
    for offset, m in ((0, (-tau + root) / 2.0), (2, (-tau - root) / 2.0)):
        disc = tau * tau + 8.0 * m
        if disc >= 0.0:
            out[offset] = (tau + math.sqrt(disc)) / 4.0
            out[offset + 1] = (tau - math.sqrt(disc)) / 4.0
    return out


def q3_nonmirror_closed_forms(tau: float) -> List[float]:
    """k = 2 roots ((tau - 2) +- sqrt(tau^2 - 4 tau - 4)) / 2 of the x3a closure besides x = 1."""
    disc = tau * tau - 4.0 * tau - 4.0
    if disc < 0.0:
        return []
    return [((tau - 2.0) + math.sqrt(disc)) / 2.0, ((tau - 2.0) - math.sqrt(disc)) / 2.0]


def q4_nonmirror_closed_forms(tau: float) -> List[float]:
    """k = 2 roots (tau - 2 +- sqrt(tau (tau - 4))) / 2 of the uy22 closure."""
    if tau < 4.0:
        return []
    root = math.sqrt(tau * (tau - 4.0))
    return [(tau - 2.0 + root) / 2.0, (tau - 2.0 - root) / 2.0]


def g_value(k: int, tau: float, x: float) -> float:
    """u_2 = (2x - tau) x^k + tau x - 1 of a mirror word with u_1 = x."""
    return float(g_polynomial(k, tau)(x))


__all__ = [
    "SOLVER_REGISTRY",
    "branches_for",
    "get_solver",
    "solve",
    "solve_q1",
    "solve_q2_mirror",
    "solve_q3_mirror",
    "solve_q4_mirror",
    "solve_q5_mirror",
    "solve_q3_nonmirror",
    "solve_q4_nonmirror",
    "solve_q4_type_up",
    "solve_q5_nonmirror",
    "search_periodic_numeric",
    "q4_mirror_closed_forms",
    "q3_nonmirror_closed_forms",
    "q4_nonmirror_closed_forms",
    "zeta_polynomial",
    "g_value",
]
