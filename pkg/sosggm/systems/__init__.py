"""Per-branch solvers of the periodic boundary-law systems."""

from sosggm.systems.mirror import (
    Q1Solver,
    Q2MirrorSolver,
    Q3MirrorSolver,
    Q4MirrorSolver,
    Q5MirrorSolver,
)
from sosggm.systems.nonmirror import (
    Q3NonMirrorSolver,
    Q4NonMirrorSolver,
    Q4TypeUpSolver,
    Q5NonMirrorSolver,
)
from sosggm.systems.numeric_search import NumericSearch

__all__ = [
    "Q1Solver",
    "Q2MirrorSolver",
    "Q3MirrorSolver",
    "Q4MirrorSolver",
    "Q5MirrorSolver",
    "Q3NonMirrorSolver",
    "Q4NonMirrorSolver",
    "Q4TypeUpSolver",
    "Q5NonMirrorSolver",
    "NumericSearch",
]
