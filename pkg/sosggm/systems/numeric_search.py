"""Experimental grid search plus Newton refinement for periodic words of any q."""

from typing import List, Tuple

import numpy as np
from scipy.ndimage import minimum_filter

from sosggm.base_solver import BranchSolver
from sosggm.config import get_settings
from sosggm.models import Branch, Params, PeriodicSolution
from sosggm.symmetry import canonical_form, minimal_period

MAX_SEEDS = 400
MAX_NEWTON_STEPS = 60
DAMPING = (1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125, 1e-2, 1e-3)
CONVERGED = 1e-10


def _orbit(a: np.ndarray, b: np.ndarray, q: int, params: Params):
    """
    Run q steps from (u_{-1}, u_0) = (a, 1) together with d/da and d/db.

    Returns the list (u_0, ..., u_q), the derivatives of u_{q-1} and u_q
    (each of shape (2,) + a.shape) and a mask of orbits that stayed positive.
    """
    k, tau = params.k, params.tau
    c = a + b - tau
    dc = np.ones((2,) + a.shape)
    prev, cur = a, np.ones_like(a)
    dprev = np.stack([np.ones_like(a), np.zeros_like(a)])
    dcur = np.zeros((2,) + a.shape)
    values = [cur]
    positive = np.ones(a.shape, dtype=bool)
    for step in range(q):
        power = cur**k
        nxt = b.copy() if step == 0 else c * power + tau * cur - prev
        dnxt = dc * power + (c * k * cur ** (k - 1) + tau) * dcur - dprev
        prev, cur, dprev, dcur = cur, nxt, dcur, dnxt
        values.append(cur)
        positive &= cur > 0.0
    return values, dprev, dcur, positive


def _defect(values: List[np.ndarray], a: np.ndarray, q: int) -> Tuple[np.ndarray, np.ndarray]:
    f1 = values[q - 1] - a
    f2 = values[q] - 1.0
    return f1, f2


class NumericSearch(BranchSolver):
    """
    Blind search for q-periodic words over a grid of (u_{-1}, u_1).

    The closure defect |u_{q-1} - u_{-1}| + |u_q - 1| is evaluated on the grid
    inside u_{-1} + u_1 < tau, its 3x3 local minima seed a damped Newton
    iteration using the exact Jacobian of the recurrence, and converged
    points become candidate words. Points within NUMERIC_CLUSTER_TOL of a
    lower-period word are dropped and the rest are merged per canonical
    class at the same tolerance. Results are tagged experimental and make
    no completeness claim.
    """

    branch = Branch.NON_MIRROR
    experimental = True

    def __init__(self, q: int, grid: int = 200) -> None:
        """
        Initialize the search.

        Args:
            q (int): Period searched for
            grid (int): Grid points per axis (default: 200)
        """
        self.q = q
        self.grid = grid
        self.family = f"numeric_q{q}"
        super().__init__()

    def is_exhaustive(self, params: Params) -> bool:
        return False

    def solve(self, params: Params) -> List[PeriodicSolution]:
        key = (self.family, self.grid, params.k, params.tau)
        return self.cache.get_or_compute(key, lambda: self._solve(params))

    def candidate_words(self, params: Params) -> List[List[float]]:
        if self.q < 2:
            return []
        a, b = self._seeds(params)
        self.logging_manager.debug(f"{self.family}: refining {a.size} seeds", ":mag:")
        a, b, converged = self._newton(a, b, params)
        with np.errstate(all="ignore"):
            values, _, _, positive = _orbit(a, b, self.q, params)
        keep = converged & positive
        tol = get_settings().NUMERIC_CLUSTER_TOL
        words: List[List[float]] = []
        classes: List[List[float]] = []
        for index in np.flatnonzero(keep):
            word = [1.0] + [float(values[i][index]) for i in range(1, self.q)]
            # near a degenerate root Newton stops about sqrt(residual) short
            if minimal_period(word, tol) < self.q:
                self.metrics_manager.increment("near_lower_period_dropped")
                continue
            key = canonical_form(word, self.q).word
            if any(np.allclose(key, seen, rtol=0.0, atol=tol) for seen in classes):
                continue
            classes.append(key)
            words.append(word)
        return words

    def _seeds(self, params: Params) -> Tuple[np.ndarray, np.ndarray]:
        tau = params.tau
        axis = (np.arange(self.grid) + 0.5) * tau / self.grid
        a, b = np.meshgrid(axis, axis, indexing="ij")
        with np.errstate(all="ignore"):
            values, _, _, positive = _orbit(a, b, self.q, params)
            f1, f2 = _defect(values, a, self.q)
            defect = np.abs(f1) + np.abs(f2)
        defect[~(positive & np.isfinite(defect) & (a + b < tau))] = np.inf
        local = (defect == minimum_filter(defect, size=3, mode="constant", cval=np.inf)) & np.isfinite(defect)
        order = np.argsort(defect[local])[:MAX_SEEDS]
        return a[local][order], b[local][order]

    def _newton(self, a: np.ndarray, b: np.ndarray, params: Params):
        tau = params.tau
        with np.errstate(all="ignore"):
            values, d1, d2, _ = _orbit(a, b, self.q, params)
            f1, f2 = _defect(values, a, self.q)
            norm = np.hypot(f1, f2)
            for _ in range(MAX_NEWTON_STEPS):
                self.metrics_manager.increment("newton_refinements", int(a.size))
                j11, j12 = d1[0] - 1.0, d1[1]
                j21, j22 = d2[0], d2[1]
                det = j11 * j22 - j12 * j21
                step_a = -(f1 * j22 - f2 * j12) / det
                step_b = -(j11 * f2 - j21 * f1) / det
                moved = np.zeros(a.shape, dtype=bool)
                new_a, new_b, new_norm = a.copy(), b.copy(), norm.copy()
                for damping in DAMPING:
                    ta, tb = a + damping * step_a, b + damping * step_b
                    tv, _, _, tpos = _orbit(ta, tb, self.q, params)
                    tf1, tf2 = _defect(tv, ta, self.q)
                    tnorm = np.hypot(tf1, tf2)
                    better = (
                        ~moved & tpos & (ta > 0.0) & (tb > 0.0) & (ta + tb < tau)
                        & np.isfinite(tnorm) & (tnorm < norm)
                    )
                    new_a[better], new_b[better], new_norm[better] = ta[better], tb[better], tnorm[better]
                    moved |= better
                if not moved.any():
                    break
                a, b, norm = new_a, new_b, new_norm
                values, d1, d2, _ = _orbit(a, b, self.q, params)
                f1, f2 = _defect(values, a, self.q)
                if np.all((norm < CONVERGED) | ~moved):
                    break
        return a, b, norm < CONVERGED

