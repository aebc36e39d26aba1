"""Solvers for mirror-branch words (u_{-1} = u_1 = x)."""

from typing import List, Tuple

from numpy.polynomial import Polynomial

from sosggm.base_solver import BranchSolver
from sosggm.config import get_settings
from sosggm.models import Branch, Params
from sosggm.polyroot import isolate_positive_roots

LOWER = 1e-9


def g_polynomial(k: int, tau: float) -> Polynomial:
    """u_2 as a function of x = u_{-1} = u_1: g(x) = (2x - tau) x^k + tau x - 1."""
    coef = [0.0] * (k + 2)
    coef[0], coef[1] = -1.0, tau
    coef[k] += -tau
    coef[k + 1] += 2.0
    return Polynomial(coef)


def x3_family(k: int, tau: float) -> Tuple[Polynomial, float, float]:
    """3-periodic mirror closure 2x^{k+1} - tau x^k + (tau - 1) x - 1 on (0, tau/2)."""
    coef = [0.0] * (k + 2)
    coef[0], coef[1] = -1.0, tau - 1.0
    coef[k] += -tau
    coef[k + 1] += 2.0
    return Polynomial(coef), LOWER, tau / 2.0


def q2_family(k: int, tau: float) -> Tuple[Polynomial, float, float]:
    """2-periodic closure (2x - tau) x^k + tau x - 2 on (0, tau/2)."""
    return g_polynomial(k, tau) - 1.0, LOWER, tau / 2.0


def q4_mirror_family(k: int, tau: float) -> Tuple[Polynomial, float, float]:
    """
    4-periodic mirror closure with the y = g(x) = 1 factor removed.

    (2x - tau) g^k + tau g - 2x = (g - 1) [2x sum_{j<k} g^j - tau g sum_{j<k-1} g^j].
    """
    g = g_polynomial(k, tau)
    x = Polynomial([0.0, 1.0])
    powers = [g**j for j in range(k)]
    reduced = 2.0 * x * sum(powers, Polynomial([0.0])) - tau * g * sum(powers[: k - 1], Polynomial([0.0]))
    return reduced, LOWER, tau / 2.0


def q5_mirror_family(k: int, tau: float) -> Tuple[Polynomial, float, float]:
    """Fixed points of phi(x) = (2x - tau) g(x)^k + (tau - 1) g(x), as phi(x) - x."""
    g = g_polynomial(k, tau)
    x = Polynomial([0.0, 1.0])
    return (2.0 * x - tau) * g**k + (tau - 1.0) * g - x, LOWER, tau / 2.0


class Q1Solver(BranchSolver):
    """The constant word is the only 1-periodic solution."""

    family = "q1"
    q = 1

    def candidate_words(self, params: Params) -> List[List[float]]:
        return []


class Q2MirrorSolver(BranchSolver):
    """Words (1, x) with u_{-1} = u_1 = x."""

    family = "q2_mirror"
    q = 2

    def candidate_words(self, params: Params) -> List[List[float]]:
        p, lo, hi = q2_family(params.k, params.tau)
        roots = isolate_positive_roots(p, lo, hi, metrics_manager=self.metrics_manager)
        return [[1.0, x] for x in roots.roots]


class Q3MirrorSolver(BranchSolver):
    """Words (1, x, x) from the cubic-type closure."""

    family = "q3_mirror"
    q = 3

    def candidate_words(self, params: Params) -> List[List[float]]:
        p, lo, hi = x3_family(params.k, params.tau)
        roots = isolate_positive_roots(p, lo, hi, metrics_manager=self.metrics_manager)
        return [[1.0, x, x] for x in roots.roots]


class Q4MirrorSolver(BranchSolver):
    """Words (1, x, y, x) with y = g(x) positive and different from 1."""

    family = "q4_mirror"
    q = 4

    def candidate_words(self, params: Params) -> List[List[float]]:
        p, lo, hi = q4_mirror_family(params.k, params.tau)
        g = g_polynomial(params.k, params.tau)
        tol = get_settings().DEDUP_TOL
        words = []
        for x in isolate_positive_roots(p, lo, hi, metrics_manager=self.metrics_manager).roots:
            y = float(g(x))
            if y > 0.0 and abs(y - 1.0) > tol:
                words.append([1.0, x, y, x])
        return words


class Q5MirrorSolver(BranchSolver):
    """Words (1, x, y, y, x) with y = g(x) > 0 at each fixed point of phi."""

    family = "q5_mirror"
    q = 5

    def candidate_words(self, params: Params) -> List[List[float]]:
        p, lo, hi = q5_mirror_family(params.k, params.tau)
        g = g_polynomial(params.k, params.tau)
        words = []
        for x in isolate_positive_roots(p, lo, hi, metrics_manager=self.metrics_manager).roots:
            y = float(g(x))
            if y > 0.0:
                words.append([1.0, x, y, y, x])
        return words
