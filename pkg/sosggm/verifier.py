"""Verification of the solver output against the boundary-law equation and the known counts."""

import math
from typing import Dict, List, Optional, Tuple

from sosggm.base_solver import nontrivial
from sosggm.boundary_law import from_word, normalisability_verdict, residual_di1
from sosggm.logging_manager import get_logger
from sosggm.models import (
    Branch,
    Params,
    PeriodicSolution,
    SymmetryKind,
    Verdict,
    VerificationReport,
)
from sosggm.params import tau_thresholds
from sosggm.periodic_systems import SOLVER_REGISTRY, get_solver
from sosggm.polyroot import count_family_roots
from sosggm.symmetry import classify, dedup
from sosggm.systems.mirror import x3_family
from sosggm.systems.nonmirror import uy22_family

REPORT_TOL = 1e-8
SYMMETRY_TOL = 1e-7
THRESHOLD_MARGIN = 1e-6
CLASS_COUNTED = ("q3_nonmirror", "q4_nonmirror")

Check = Tuple[bool, Optional[List[str]]]


def expected_counts(k: int, tau: float) -> Dict[str, int]:
    """
    Solution counts that are known in closed form at (k, tau).

    Keys are registry names (nontrivial raw solutions), "classes_<name>"
    (nontrivial boundary-law classes) and the root counts "x3_roots" and
    "uy22_roots" of the 3-periodic mirror and 4-periodic non-mirror closures.
    """
    tau_0, tau_1 = tau_thresholds(k)
    expected: Dict[str, int] = {}
    if tau > tau_0 + THRESHOLD_MARGIN:
        expected["x3_roots"] = 3
    if tau > tau_1 + THRESHOLD_MARGIN:
        expected["uy22_roots"] = 2
    if k != 2:
        return expected

    tau_c = 2.0 * (1.0 + math.sqrt(2.0))
    tau_m = 2.0 * (1.0 + math.sqrt(5.0))
    if tau < 4.0 - THRESHOLD_MARGIN:
        expected["q4_mirror"] = 0
    elif 4.0 + THRESHOLD_MARGIN < tau < tau_m - THRESHOLD_MARGIN:
        expected["q4_mirror"] = 2
    elif abs(tau - tau_m) < 1e-9:
        expected["q4_mirror"] = 3
    elif tau > tau_m + THRESHOLD_MARGIN:
        expected["q4_mirror"] = 4

    if abs(tau - 8.0) < 1e-12:
        expected["q5_mirror"] = 6
        expected["q5_nonmirror"] = 6

    if tau < tau_c - THRESHOLD_MARGIN:
        expected["classes_q3_nonmirror"] = 0
    elif tau > tau_c + THRESHOLD_MARGIN and abs(tau - tau_0) > THRESHOLD_MARGIN:
        expected["classes_q3_nonmirror"] = 2
    if tau < tau_1 - THRESHOLD_MARGIN:
        expected["classes_q4_nonmirror"] = 0
    elif tau > tau_1 + THRESHOLD_MARGIN:
        expected["classes_q4_nonmirror"] = 2
    return expected


class SolutionVerifier:
    """
    Runs every q <= 5 branch at one parameter point and checks its output.

    Each check returns a success flag and, on failure, the list of failing
    items, so the CLI can print them and exit non-zero.
    """

    def __init__(self, params: Params) -> None:
        """
        Initialize the verifier and solve every registered branch.

        Args:
            params (Params): Model parameters
        """
        self.params = params
        self.logger = get_logger(__name__)
        self.solutions: Dict[str, List[PeriodicSolution]] = {
            name: get_solver(name).solve(params) for name in SOLVER_REGISTRY
        }

    def _all(self) -> List[Tuple[str, PeriodicSolution]]:
        return [(name, s) for name, found in self.solutions.items() for s in found]

    def check_residuals(self) -> Check:
        """Every solution closes the recurrence and its law solves the boundary-law equation."""
        failures = []
        for name, solution in self._all():
            if not solution.system_residual < REPORT_TOL:
                failures.append(f"{name} {solution.word}: system residual {solution.system_residual:.3g}")
            di1 = residual_di1(from_word(solution))
            if not di1 < REPORT_TOL:
                failures.append(f"{name} {solution.word}: boundary-law residual {di1:.3g}")
        return (not failures), (failures or None)

    def check_normalisability(self) -> Check:
        """Periodic laws are never normalisable."""
        failures = [
            f"{name} {solution.word}: expected a divergent normalisability sum"
            for name, solution in self._all()
            if normalisability_verdict(from_word(solution)).verdict != Verdict.DIVERGENT
        ]
        return (not failures), (failures or None)

    def check_symmetry(self) -> Check:
        """
        Mirror words classify as mirror, anchored non-mirror words as two-mirror,
        and both carry at most q // 2 + 1 distinct values.
        """
        failures = []
        for name, solution in self._all():
            word, q = solution.word, solution.q
            symmetry = classify(word, q, SYMMETRY_TOL)
            if solution.branch == Branch.MIRROR and symmetry.kind != SymmetryKind.MIRROR:
                failures.append(f"{name} {word}: mirror word classified {symmetry.kind.value}")
            anchors = [
                p for p in range(1, q)
                if abs(word[p] - 1.0) < SYMMETRY_TOL and abs(word[(p + 1) % q] - word[-1]) < SYMMETRY_TOL
            ]
            if solution.branch == Branch.NON_MIRROR and anchors and symmetry.kind == SymmetryKind.NONE:
                failures.append(f"{name} {word}: anchored word has no two-mirror symmetry")
            if symmetry.kind != SymmetryKind.NONE:
                distinct: List[float] = []
                for value in word:
                    if all(abs(value - seen) > SYMMETRY_TOL for seen in distinct):
                        distinct.append(value)
                if len(distinct) > q // 2 + 1:
                    failures.append(f"{name} {word}: {len(distinct)} distinct values exceed {q // 2 + 1}")
        return (not failures), (failures or None)

    def observed_counts(self) -> Dict[str, int]:
        """Nontrivial counts per branch, class counts and closure root counts."""
        counts = {name: len(nontrivial(found)) for name, found in self.solutions.items()}
        for name in CLASS_COUNTED:
            counts[f"classes_{name}"] = len(nontrivial(dedup(self.solutions[name])))
        counts["x3_roots"] = count_family_roots(x3_family, self.params.k, self.params.tau)
        counts["uy22_roots"] = count_family_roots(uy22_family, self.params.k, self.params.tau)
        return counts

    def check_counts(self, counts: Dict[str, int]) -> Check:
        """Compare observed counts with the ones known at (k, tau)."""
        failures = [
            f"{key}: expected {value}, found {counts.get(key)}"
            for key, value in expected_counts(self.params.k, self.params.tau).items()
            if counts.get(key) != value
        ]
        return (not failures), (failures or None)

    def run(self) -> VerificationReport:
        """
        Run every check.

        Returns:
            VerificationReport: Per-check flags, observed counts and failing items
        """
        counts = self.observed_counts()
        results = {
            "residuals": self.check_residuals(),
            "normalisability": self.check_normalisability(),
            "symmetry": self.check_symmetry(),
            "counts": self.check_counts(counts),
        }
        failures = [item for _, errors in results.values() for item in (errors or [])]
        for item in failures:
            self.logger.error(item, ":x:")
        passed = not failures
        if passed:
            self.logger.info(
                f"All checks passed at k={self.params.k}, tau={self.params.tau}", ":white_check_mark:"
            )
        return VerificationReport(
            k=self.params.k,
            tau=self.params.tau,
            passed=passed,
            checks={name: ok for name, (ok, _) in results.items()},
            counts=counts,
            failures=failures,
        )
