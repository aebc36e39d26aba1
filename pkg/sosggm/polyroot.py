"""Positive real root isolation, deflation and critical-parameter location."""

from typing import Callable, List, Optional, Tuple

import numpy as np
import numpy.polynomial.polynomial as poly
from numpy.polynomial import Polynomial
from scipy.optimize import brentq

from sosggm.config import get_settings
from sosggm.exceptions import EmptyProblem, InternalError, NoTransition, NotARoot
from sosggm.logging_manager import get_logger
from sosggm.metrics_manager import MetricsManager
from sosggm.models import RootSet

logger = get_logger(__name__)

# (k, tau) -> (polynomial, search lower end, search upper end)
PolynomialFamily = Callable[[int, float], Tuple[Polynomial, float, float]]

MERGE_FRACTION = 1e-6
DOUBLE_ROOT_SLACK = 16.0


def _trimmed(p: Polynomial) -> np.ndarray:
    coef = np.trim_zeros(np.asarray(p.coef, dtype=float), "b")
    return coef if coef.size else np.zeros(1)


def descartes_bound(p: Polynomial) -> int:
    """
    Count the sign changes of the coefficient sequence, zeros neglected.

    Args:
        p (Polynomial): Polynomial in ascending coefficients

    Returns:
        int: Upper bound on the number of positive roots
    """
    signs = [np.sign(c) for c in _trimmed(p) if c != 0.0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _evaluator(coef: np.ndarray, extended: bool) -> Callable[[float], float]:
    if extended:
        wide = coef.astype(np.longdouble)
        return lambda x: float(poly.polyval(np.longdouble(x), wide))
    return lambda x: float(poly.polyval(x, coef))


def _evaluation_error(coef: np.ndarray, x: float) -> float:
    """Bound on the rounding error of Horner evaluation at x."""
    magnitude = float(np.sum(np.abs(coef) * np.abs(x) ** np.arange(coef.size)))
    return DOUBLE_ROOT_SLACK * 2.0 * max(coef.size - 1, 1) * np.finfo(float).eps * magnitude


def _roots_in(
    coef: np.ndarray, lo: float, hi: float, tol: float, grid: int, extended: bool
) -> List[Tuple[float, bool]]:
    """Roots of coef in (lo, hi) as (root, near_double) pairs, unmerged."""
    deg = coef.size - 1
    if deg <= 0:
        return []
    if deg == 1:
        root = -coef[0] / coef[1]
        return [(root, False)] if lo < root < hi else []

    f = _evaluator(coef, extended)
    critical = [r for r, _ in _roots_in(poly.polyder(coef), lo, hi, tol, grid, extended)]

    breakpoints = np.union1d(np.linspace(lo, hi, grid + 1), np.asarray(critical, dtype=float))
    values = poly.polyval(breakpoints, coef)
    found: List[Tuple[float, bool]] = []
    for i in range(breakpoints.size - 1):
        a, b = breakpoints[i], breakpoints[i + 1]
        fa, fb = values[i], values[i + 1]
        if fa == 0.0 and i > 0:
            found.append((float(a), False))
        elif fa * fb < 0.0:
            if extended:
                fa, fb = f(a), f(b)
                if fa * fb >= 0.0:
                    continue
            found.append((float(brentq(f, a, b, xtol=tol, maxiter=200)), False))

    # a local extremum touching zero is a root the sign scan cannot see
    for c in critical:
        if abs(f(c)) <= _evaluation_error(coef, c):
            found.append((float(c), True))
    return found


def _merge(found: List[Tuple[float, bool]], width: float) -> List[Tuple[float, bool]]:
    merged: List[Tuple[float, bool]] = []
    for root, flag in sorted(found):
        if merged and root - merged[-1][0] < width:
            previous, _ = merged[-1]
            merged[-1] = (0.5 * (previous + root), True)
        else:
            merged.append((root, flag))
    return merged


def isolate_positive_roots(
    p: Polynomial,
    lo: float = 1e-9,
    hi: Optional[float] = None,
    tol: float = 1e-13,
    extended: bool = False,
    metrics_manager: Optional[MetricsManager] = None,
) -> RootSet:
    """
    Find all real roots of p in the open interval (lo, hi).

    The interval is cut at a uniform grid and at the roots of p' (found the
    same way, recursively), so every piece is monotone and Brent's method
    applies wherever the sign changes. Critical points where |p| is within
    rounding error of zero are reported as near-double roots; roots closer
    than 1e-6 * (hi - lo) are merged and flagged.

    Args:
        p (Polynomial): Polynomial in ascending coefficients
        lo (float): Lower end, >= 0 (default: 1e-9)
        hi (Optional[float]): Upper end (default: Cauchy bound of the positive roots)
        tol (float): Bracket width for Brent's method (default: 1e-13)
        extended (bool): Evaluate in numpy longdouble (default: False)
        metrics_manager (Optional[MetricsManager]): Receives roots_isolated counts

    Returns:
        RootSet: Sorted roots with near-double flags and residuals

    Raises:
        EmptyProblem: If p is constant
        InternalError: If more roots are found than the Descartes bound allows
    """
    coef = _trimmed(p)
    if coef.size <= 1:
        raise EmptyProblem("Cannot isolate roots of a constant polynomial")
    if hi is None:
        hi = 1.0 + float(np.max(np.abs(coef[:-1])) / abs(coef[-1]))
    if lo < 0.0 or hi <= lo:
        raise EmptyProblem(f"Invalid search interval ({lo}, {hi})")

    grid = get_settings().ROOT_GRID
    found = _merge(_roots_in(coef, lo, hi, tol, grid, extended), MERGE_FRACTION * (hi - lo))
    f = _evaluator(coef, extended)
    roots = [r for r, _ in found]
    bound = descartes_bound(p)
    if len(roots) > bound:
        logger.error(f"Found {len(roots)} roots, Descartes allows {bound}", ":x:")
        raise InternalError(f"Root count {len(roots)} exceeds the Descartes bound {bound}")

    if metrics_manager is not None:
        metrics_manager.increment("roots_isolated", len(roots))
    logger.debug(f"Isolated {len(roots)} roots of a degree {coef.size - 1} polynomial in ({lo}, {hi})")
    return RootSet(
        roots=roots,
        multiplicity_flags=[flag for _, flag in found],
        residuals=[abs(f(r)) for r in roots],
        descartes_bound=bound,
    )


def deflate_by_root(p: Polynomial, r: float) -> Polynomial:
    """
    Divide p by (x - r) with synthetic division.

    Args:
        p (Polynomial): Polynomial to deflate
        r (float): A root of p

    Returns:
        Polynomial: The quotient

    Raises:
        NotARoot: If |p(r)| is not small relative to the size of the terms of p at r
    """
    coef = _trimmed(p)
    scale = float(np.sum(np.abs(coef) * abs(r) ** np.arange(coef.size)))
    if abs(poly.polyval(r, coef)) >= 1e-8 * max(scale, 1.0):
        raise NotARoot(f"{r} is not a root (p(r) = {poly.polyval(r, coef)})")
    quotient, _ = poly.polydiv(coef, np.array([-r, 1.0]))
    return Polynomial(quotient)


def bisect_transition(
    count: Callable[[float], int],
    tau_lo: float,
    tau_hi: float,
    tol: float = 1e-9,
    metrics_manager: Optional[MetricsManager] = None,
) -> float:
    """
    Locate the first change of an integer-valued count between tau_lo and tau_hi.

    Args:
        count (Callable[[float], int]): Solution count as a function of tau
        tau_lo (float): Lower end of the bracket
        tau_hi (float): Upper end of the bracket
        tol (float): Width of the final bracket (default: 1e-9)
        metrics_manager (Optional[MetricsManager]): Receives bisection_steps counts

    Returns:
        float: Midpoint of the final bracket

    Raises:
        NoTransition: If the counts at both ends agree
    """
    count_lo = count(tau_lo)
    count_hi = count(tau_hi)
    if count_lo == count_hi:
        raise NoTransition(
            f"Same count {count_lo} at tau = {tau_lo} and tau = {tau_hi}"
        )
    lo, hi = tau_lo, tau_hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if count(mid) == count_lo:
            lo = mid
        else:
            hi = mid
        if metrics_manager is not None:
            metrics_manager.increment("bisection_steps")
    logger.info(f"Count changes from {count_lo} near tau = {0.5 * (lo + hi):.12g}", ":mag:")
    return 0.5 * (lo + hi)


def count_family_roots(family: PolynomialFamily, k: int, tau: float) -> int:
    """Number of distinct positive roots of a family member on its search interval."""
    p, lo, hi = family(k, tau)
    return isolate_positive_roots(p, lo, hi).count


def find_critical_tau(
    family: PolynomialFamily,
    k: int,
    tau_lo: float,
    tau_hi: float,
    tol: float = 1e-9,
    metrics_manager: Optional[MetricsManager] = None,
) -> float:
    """
    Bisect on tau for the point where the root count of a polynomial family changes.

    Args:
        family (PolynomialFamily): Builder (k, tau) -> (polynomial, lo, hi)
        k (int): Tree order
        tau_lo (float): Lower end of the bracket
        tau_hi (float): Upper end of the bracket
        tol (float): Width of the final bracket (default: 1e-9)
        metrics_manager (Optional[MetricsManager]): Receives bisection_steps counts

    Returns:
        float: Critical tau

    Raises:
        NoTransition: If the counts at both ends agree
    """
    return bisect_transition(
        lambda tau: count_family_roots(family, k, tau),
        tau_lo,
        tau_hi,
        tol=tol,
        metrics_manager=metrics_manager,
    )
