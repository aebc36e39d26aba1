"""Solvers for words with u_{-1} != u_1 (and the alternating-ones type)."""

from typing import List, Tuple

from numpy.polynomial import Polynomial

from sosggm.base_solver import BranchSolver
from sosggm.config import get_settings
from sosggm.models import Branch, Params
from sosggm.polyroot import deflate_by_root, isolate_positive_roots
from sosggm.systems.mirror import LOWER
from sosggm.systems.numeric_search import NumericSearch

X = Polynomial([0.0, 1.0])


def _monomial(n: int) -> Polynomial:
    return Polynomial([0.0] * n + [1.0])


def x3a_family(k: int, tau: float) -> Tuple[Polynomial, float, float]:
    """x^{k+1} - (tau - 1) x^k + tau x - 2 on (0, tau - 1); y = 1 branch of q = 3."""
    coef = [0.0] * (k + 2)
    coef[0], coef[1] = -2.0, tau
    coef[k] += -(tau - 1.0)
    coef[k + 1] += 1.0
    return Polynomial(coef), LOWER, tau - 1.0


def uy22_family(k: int, tau: float) -> Tuple[Polynomial, float, float]:
    """y^k - (tau - 2) sum_{j=1}^{k-1} y^j + 1 on (0, tau - 1); x = 1 branch of q = 4."""
    coef = [1.0] + [-(tau - 2.0)] * (k - 1) + [1.0]
    return Polynomial(coef), LOWER, tau - 1.0


def type_up_family(k: int, tau: float) -> Tuple[Polynomial, float, float]:
    """
    Alternating-ones system reduced to x = u_{-1}.

    With s = (2 - tau x)/x^k and y = s + tau - x = Y/x^k, where
    Y = 2 - tau x + (tau - x) x^k, the remaining equation times x^{k^2 + k} is
    (2 - tau x) Y^k + (tau Y - 2 x^k) x^{k^2}.
    """
    big_y = 2.0 - tau * X + (tau - X) * _monomial(k)
    p = (2.0 - tau * X) * big_y**k + (tau * big_y - 2.0 * _monomial(k)) * _monomial(k * k)
    return p, 2.0 / tau, tau


def _eta_numerator(k: int, tau: float) -> Polynomial:
    """N(x) = 2 - tau x + tau x^k - x^{k+1}, so that eta(x) = N(x) / x^k."""
    return 2.0 - tau * X + tau * _monomial(k) - _monomial(k + 1)


def q5_nonmirror_family(k: int, tau: float) -> Tuple[Polynomial, float, float]:
    """
    Words (1, y, y, 1, x) reduced to x = u_{-1}: x = xi(eta(x)) times x^{k^2 + k}.

    (2 - tau x) N^k + (tau - 1) N x^{k^2} - x^{k^2 + k}; x = 1 is always a root.
    """
    n = _eta_numerator(k, tau)
    p = (2.0 - tau * X) * n**k + (tau - 1.0) * n * _monomial(k * k) - _monomial(k * k + k)
    return p, 2.0 / tau, tau


def zeta_polynomial(tau: float) -> Polynomial:
    """Closed-form sextic left for k = 2 after removing x = 1 from the 5-periodic non-mirror closure."""
    return Polynomial(
        [
            8.0,
            -(12.0 * tau - 8.0),
            6.0 * tau**2 - 4.0 * tau + 8.0,
            -(tau**3 + 2.0 * tau**2 + 4.0 * tau),
            tau**3 + 6.0 * tau - 2.0,
            -(3.0 * tau**2 - 3.0 * tau + 2.0),
            2.0 * tau - 1.0,
        ]
    )


class Q3NonMirrorSolver(BranchSolver):
    """
    Words with u_{-1} != u_1 and q = 3.

    The y = 1 branch gives (1, 1, x) and the x = 1 branch (1, x, 1), both with
    x a root of the x3a closure. For k <= 4 the branch with x, y != 1 forces
    x + y = tau and is empty; for larger k it is searched numerically.
    """

    family = "q3_nonmirror"
    q = 3
    branch = Branch.NON_MIRROR

    def is_exhaustive(self, params: Params) -> bool:
        return params.k <= 4

    def candidate_words(self, params: Params) -> List[List[float]]:
        p, lo, hi = x3a_family(params.k, params.tau)
        words = []
        for x in isolate_positive_roots(p, lo, hi, metrics_manager=self.metrics_manager).roots:
            words.append([1.0, 1.0, x])
            words.append([1.0, x, 1.0])
        if not self.is_exhaustive(params):
            words.extend(_numeric_non_anchored(params, self.q))
        return words


class Q4NonMirrorSolver(BranchSolver):
    """
    Words with u_{-1} != u_1 and q = 4.

    The x = 1 branch forces u_2 = u_1 = y with y a root of uy22, giving
    (1, y, y, 1); the y = 1 branch gives its rotation (1, 1, x, x). For k = 2
    these exhaust the system; for k >= 3 the x, y != 1 branch is searched
    numerically.
    """

    family = "q4_nonmirror"
    q = 4
    branch = Branch.NON_MIRROR

    def is_exhaustive(self, params: Params) -> bool:
        return params.k == 2

    def candidate_words(self, params: Params) -> List[List[float]]:
        p, lo, hi = uy22_family(params.k, params.tau)
        words = []
        for y in isolate_positive_roots(p, lo, hi, metrics_manager=self.metrics_manager).roots:
            words.append([1.0, y, y, 1.0])
            words.append([1.0, 1.0, y, y])
        if not self.is_exhaustive(params):
            words.extend(_numeric_non_anchored(params, self.q))
        return words


class Q4TypeUpSolver(BranchSolver):
    """Alternating-ones words (1, y, 1, x) with (x, y) = (u_{-1}, u_1)."""

    family = "q4_type_up"
    q = 4
    branch = Branch.NON_MIRROR

    def candidate_words(self, params: Params) -> List[List[float]]:
        k, tau = params.k, params.tau
        p, lo, hi = type_up_family(k, tau)
        words = []
        for x in isolate_positive_roots(p, lo, hi, metrics_manager=self.metrics_manager).roots:
            big_y = 2.0 - tau * x + (tau - x) * x**k
            if big_y > 0.0:
                words.append([1.0, big_y / x**k, 1.0, x])
        return words


class Q5NonMirrorSolver(BranchSolver):
    """
    Words (1, y, y, 1, x) with y = eta(x) > 0.

    The other sub-case (z = 1, t = x) is the same system after renaming and
    is not solved twice. For k = 2 the root x = 1 is divided out, leaving
    the sextic returned by zeta_polynomial.
    """

    family = "q5_nonmirror"
    q = 5
    branch = Branch.NON_MIRROR

    def candidate_words(self, params: Params) -> List[List[float]]:
        k, tau = params.k, params.tau
        p, lo, hi = q5_nonmirror_family(k, tau)
        if k == 2:
            p = -deflate_by_root(p, 1.0)
        n = _eta_numerator(k, tau)
        words = []
        for x in isolate_positive_roots(p, lo, hi, metrics_manager=self.metrics_manager).roots:
            eta = float(n(x)) / x**k
            if eta > 0.0:
                words.append([1.0, eta, eta, 1.0, x])
        return words


def _numeric_non_anchored(params: Params, q: int) -> List[List[float]]:
    """q-periodic words with u_{-1} - 1, u_1 - 1 and u_{-1} - u_1 all beyond NUMERIC_CLUSTER_TOL."""
    tol = get_settings().NUMERIC_CLUSTER_TOL
    words = []
    for solution in NumericSearch(q).solve(params):
        w = solution.word
        if abs(w[-1] - 1.0) > tol and abs(w[1] - 1.0) > tol and abs(w[-1] - w[1]) > tol:
            words.append(list(w))
    return words
