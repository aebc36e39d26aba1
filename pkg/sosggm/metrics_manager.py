"""Metrics manager module for the sosggm project."""

import sys
import threading
from typing import Dict, List, Optional, TextIO
from colorama import Fore, Style, init
from emoji import emojize
from sosggm.logging_manager import get_logger

# Initialize colorama
init(autoreset=True)


class MetricsManager:
    """
    Manages solver counters, their consistency checks, and a summary display.

    Each branch solver and the command line own one instance; counters are
    plain integers keyed by name.
    """

    STANDARD_METRICS = [
        "roots_isolated",
        "candidates_checked",
        "solutions_accepted",
        "solutions_rejected",
        "cache_hits",
        "cache_misses",
        "bisection_steps",
        "newton_refinements",
    ]

    def __init__(self, source_name: str) -> None:
        """
        Initialize the MetricsManager.

        Args:
            source_name (str): Name of the counted component (e.g., "q4_mirror")
        """
        self.source_name = source_name
        self.metrics: Dict[str, int] = {metric: 0 for metric in self.STANDARD_METRICS}
        self.logger = get_logger(f"{__name__}.{source_name}")
        self._lock = threading.Lock()

    def increment(self, metric_name: str, value: int = 1) -> None:
        """Add value to a counter, creating it at zero if unknown."""
        with self._lock:
            if metric_name not in self.metrics:
                self.metrics[metric_name] = 0
                self.logger.debug(f"Created non-standard metric '{metric_name}'")
            self.metrics[metric_name] += value

    def set(self, metric_name: str, value: int) -> None:
        with self._lock:
            self.metrics[metric_name] = value

    def get(self, metric_name: str) -> int:
        """Current value of a counter; 0 when never recorded."""
        return self.metrics.get(metric_name, 0)

    def reset(self) -> None:
        with self._lock:
            for metric in self.metrics:
                self.metrics[metric] = 0

    def validate_metrics(self) -> List[str]:
        """
        Check the counters against each other.

        Every accepted or rejected word was first counted as a checked
        candidate, so the decisions never outnumber the candidates.

        Returns:
            List[str]: One message per broken relation; empty when consistent
        """
        validation_errors = []
        decided = self.get("solutions_accepted") + self.get("solutions_rejected")
        checked = self.get("candidates_checked")
        if decided > checked:
            validation_errors.append(
                f"Candidate discrepancy: accepted + rejected ({decided}) > "
                f"candidates_checked ({checked})"
            )
        return validation_errors

    def display_metrics(self, include_validation: bool = True, stream: Optional[TextIO] = None) -> None:
        """
        Print the counters, sorted by name, followed by the validation result.

        Args:
            include_validation (bool): Whether to include validation checks (default: True)
            stream (Optional[TextIO]): Destination stream (default: stderr)
        """
        stream = stream or sys.stderr
        print(
            f"\n{Fore.CYAN}{Style.BRIGHT}"
            + emojize(f":bar_chart: Solver Summary for {self.source_name}", language="alias")
            + f"{Style.RESET_ALL}",
            file=stream,
        )
        for metric in sorted(self.metrics):
            print(f"  {metric}: {self.metrics[metric]}", file=stream)

        if include_validation:
            validation_errors = self.validate_metrics()
            if not validation_errors:
                print(
                    f"{Fore.GREEN}"
                    + emojize(":white_check_mark: All counts are valid!", language="alias")
                    + f"{Style.RESET_ALL}",
                    file=stream,
                )
            for error in validation_errors:
                print(
                    emojize(f":warning: {Fore.YELLOW}{error}{Style.RESET_ALL}", language="alias"),
                    file=stream,
                )

    def get_all_metrics(self) -> Dict[str, int]:
        """Snapshot of every counter, taken under the lock."""
        with self._lock:
            return self.metrics.copy()
