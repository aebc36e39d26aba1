"""Tabulated curves of the k = 2 closures, emitted as CSV for external plotting."""

from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np

from sosggm.periodic_systems import g_value, q4_mirror_closed_forms, zeta_polynomial
from sosggm.systems.mirror import g_polynomial
from sosggm.utils import render_csv

FIG1_TAU_RANGE = (4.0, 10.0)
ZETA_WINDOWS: Tuple[Tuple[float, float], ...] = ((0.2, 0.4), (0.7, 3.5), (3.5, 6.8))
K = 2


def phi_minus_x(tau: float, x: np.ndarray) -> np.ndarray:
    """phi(x) - x with phi(x) = (2x - tau) g(x)^2 + (tau - 1) g(x)."""
    g = g_polynomial(K, tau)(x)
    return (2.0 * x - tau) * g**K + (tau - 1.0) * g - x


def mirror_window(tau: float) -> Tuple[float, float]:
    """Plot window for the 5-periodic mirror curves; (0.12, 3.87) at tau = 8."""
    return 0.015 * tau, 0.48375 * tau


def fig1(tau: float, grid: int) -> str:
    """g(x_i(tau)) for the four closed-form 4-periodic mirror roots; empty cells off-domain."""
    rows = []
    for t in np.linspace(*FIG1_TAU_RANGE, grid):
        roots = q4_mirror_closed_forms(float(t))
        rows.append([float(t)] + [None if x is None else g_value(K, float(t), x) for x in roots])
    return render_csv(("tau", "g_x1", "g_x2", "g_x3", "g_x4"), rows)


def _curve(values: Callable[[np.ndarray], np.ndarray], window: Tuple[float, float], grid: int) -> List[List[float]]:
    x = np.linspace(*window, grid)
    return [[float(a), float(b)] for a, b in zip(x, values(x))]


def fig2(tau: float, grid: int) -> str:
    """phi(x) - x across the mirror window; its sign changes are the 5-periodic mirror roots."""
    return render_csv(("x", "value"), _curve(lambda x: phi_minus_x(tau, x), mirror_window(tau), grid))


def fig3(tau: float, grid: int) -> str:
    """g(x) across the mirror window."""
    return render_csv(("x", "value"), _curve(g_polynomial(K, tau), mirror_window(tau), grid))


def fig4(tau: float, grid: int) -> str:
    """The sextic zeta(x) over three windows, with a window column."""
    zeta = zeta_polynomial(tau)
    rows = []
    for index, window in enumerate(ZETA_WINDOWS):
        rows.extend([index] + row for row in _curve(zeta, window, grid))
    return render_csv(("window", "x", "value"), rows)


FIGURES: Dict[str, Callable[[float, int], str]] = {
    "fig1": fig1,
    "fig2": fig2,
    "fig3": fig3,
    "fig4": fig4,
}


def figure_data(name: str, tau: float = 8.0, grid: int = 2000) -> str:
    """
    Render the named figure as CSV.

    Args:
        name (str): One of fig1, fig2, fig3, fig4
        tau (float): Parameter for fig2/fig3/fig4 (default: 8)
        grid (int): Points per curve or window (default: 2000)

    Returns:
        str: CSV document

    Raises:
        KeyError: If the name is unknown
    """
    return FIGURES[name](tau, grid)


def column(csv_text: str, name: str) -> List[float]:
    """Parse one numeric column back out of a figure CSV; empty cells are skipped."""
    lines = csv_text.strip().split("\n")
    index = lines[0].split(",").index(name)
    return [float(cells[index]) for cells in (line.split(",") for line in lines[1:]) if cells[index] != ""]


def crossings(values: Sequence[float]) -> int:
    """Number of strict sign changes along a tabulated curve."""
    arr = np.asarray(values)
    return int(np.count_nonzero(arr[:-1] * arr[1:] < 0.0))
