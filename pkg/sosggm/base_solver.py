"""Base solver module for the per-branch periodic boundary-law systems."""

import abc
from typing import List, Optional, Sequence

from sosggm.cache import Cache
from sosggm.config import get_settings
from sosggm.logging_manager import get_logger
from sosggm.metrics_manager import MetricsManager
from sosggm.models import Branch, Params, PeriodicSolution
from sosggm.recurrence import closure_residual
from sosggm.symmetry import minimal_period


class BranchSolver(abc.ABC):
    """
    Abstract base class for the solvers of one (q, branch) polynomial system.

    Subclasses reduce their system to univariate root finding and return
    candidate words from ``candidate_words``. The base class adds the trivial
    all-ones word, checks every candidate against the recurrence, tags the
    minimal period and memoises results per (family, k, tau).
    """

    family: str = ""
    q: int = 1
    branch: Branch = Branch.MIRROR
    experimental: bool = False

    def __init__(self) -> None:
        """Initialize the solver with its own metrics, logger and cache."""
        settings = get_settings()
        self.metrics_manager = MetricsManager(source_name=self.family)
        self.logging_manager = get_logger(f"{__name__}.{self.family}")
        self.cache = Cache(
            maxsize=settings.CACHE_MAX_SIZE,
            ttl=settings.CACHE_TTL,
            metrics_manager=self.metrics_manager,
        )

    @abc.abstractmethod
    def candidate_words(self, params: Params) -> List[List[float]]:
        """
        Produce candidate words (u_0 = 1, u_1, ..., u_{q-1}) of this branch.

        Args:
            params (Params): Model parameters

        Returns:
            List[List[float]]: Candidate words, not yet verified
        """

    def is_exhaustive(self, params: Params) -> bool:
        """Whether the candidates are known to cover every solution of the branch."""
        return True

    def solve(self, params: Params) -> List[PeriodicSolution]:
        """
        Solve the branch at the given parameters.

        Args:
            params (Params): Model parameters

        Returns:
            List[PeriodicSolution]: The trivial word followed by the accepted candidates
        """
        key = (self.family, params.k, params.tau)
        return self.cache.get_or_compute(key, lambda: self._solve(params))

    def _solve(self, params: Params) -> List[PeriodicSolution]:
        self.logging_manager.debug(
            f"Solving {self.family} at k={params.k}, tau={params.tau}", ":gear:"
        )
        exhaustive = self.is_exhaustive(params)
        solutions = [self._build([1.0] * self.q, params, exhaustive)]
        for word in self.candidate_words(params):
            if minimal_period(word) == 1:
                continue
            solution = self._accept(word, params, exhaustive)
            if solution is not None:
                solutions.append(solution)
        self.logging_manager.info(
            f"{self.family}: {len(solutions) - 1} nontrivial solutions at tau={params.tau}",
            ":white_check_mark:",
        )
        return solutions

    def _accept(
        self, word: Sequence[float], params: Params, exhaustive: bool
    ) -> Optional[PeriodicSolution]:
        self.metrics_manager.increment("candidates_checked")
        residual = closure_residual(word, params)
        if any(not value > 0.0 for value in word) or not residual < get_settings().RESIDUAL_TOL:
            self.metrics_manager.increment("solutions_rejected")
            self.logging_manager.warning(
                f"{self.family}: rejected candidate {list(word)} (residual {residual:.3g})",
                ":warning:",
            )
            return None
        self.metrics_manager.increment("solutions_accepted")
        return self._build(word, params, exhaustive, residual)

    def _build(
        self, word: Sequence[float], params: Params, exhaustive: bool, residual: float = 0.0
    ) -> PeriodicSolution:
        return PeriodicSolution(
            word=list(word),
            q=self.q,
            branch=self.branch,
            system_residual=residual,
            params=params,
            minimal_period=minimal_period(word),
            family=self.family,
            experimental=self.experimental,
            exhaustive=exhaustive,
        )


def nontrivial(solutions: Sequence[PeriodicSolution]) -> List[PeriodicSolution]:
    """Drop the solutions that reduce to the constant word."""
    return [s for s in solutions if s.minimal_period > 1]
