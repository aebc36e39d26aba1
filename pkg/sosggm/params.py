"""Model parameters, the tau/theta bridge and the bounds that confine root searches."""

import math
from typing import Tuple

from sosggm.exceptions import ConstraintViolation, InvalidTemperature
from sosggm.models import Params, PositivityBound


def theta_from_tau(tau: float, k: int) -> Params:
    """
    Build Params from tau = 1/theta + theta, taking the root theta in (0, 1).

    Args:
        tau (float): Temperature parameter, must exceed 2
        k (int): Tree order, must be at least 2

    Returns:
        Params: Validated parameters

    Raises:
        InvalidTemperature: If tau <= 2 (theta = 1 is excluded)
        ConstraintViolation: If k < 2
    """
    if not (isinstance(tau, (int, float)) and math.isfinite(tau)) or tau <= 2.0:
        raise InvalidTemperature(f"tau must be a finite number > 2, got {tau}")
    if k < 2:
        raise ConstraintViolation(f"Tree order k must be >= 2, got {k}")
    # 2 / (tau + sqrt(tau^2 - 4)) equals (tau - sqrt(tau^2 - 4)) / 2 without cancellation
    theta = 2.0 / (tau + math.sqrt(tau * tau - 4.0))
    return Params(k=k, tau=float(tau), theta=theta)


def q_weight(params: Params, zeta: int) -> float:
    """Return the SOS transfer weight theta^|zeta| of a gradient increment."""
    return params.theta ** abs(zeta)


def tau_thresholds(k: int) -> Tuple[float, float]:
    """
    Return the thresholds (tau0, tau1) = ((2k+1)/(k-1), 2k/(k-1)).

    Args:
        k (int): Tree order

    Returns:
        Tuple[float, float]: tau0 and tau1
    """
    if k < 2:
        raise ConstraintViolation(f"Tree order k must be >= 2, got {k}")
    return (2 * k + 1) / (k - 1), 2 * k / (k - 1)


def positivity_bound(params: Params, u_m1: float, u_1: float) -> PositivityBound:
    """
    Bound the values of a strictly positive trajectory with given u_{-1}, u_1.

    With c = tau - u_{-1} - u_1 > 0 every step satisfies
    u_{i+1} + u_{i-1} = psi(u_i) = tau*u_i - c*u_i^k, so the orbit stays below
    the zero x0 of psi and below its maximum psi(x_star).

    Args:
        params (Params): Model parameters
        u_m1 (float): u_{-1}
        u_1 (float): u_1

    Returns:
        PositivityBound: x0, x_star and the resulting upper bound

    Raises:
        ConstraintViolation: If the inputs are not positive or u_{-1} + u_1 >= tau
    """
    if u_m1 <= 0.0 or u_1 <= 0.0:
        raise ConstraintViolation("u_-1 and u_1 must be positive")
    gap = params.tau - u_m1 - u_1
    if gap <= 0.0:
        raise ConstraintViolation(
            f"u_-1 + u_1 = {u_m1 + u_1} must be smaller than tau = {params.tau}"
        )
    k = params.k
    x0 = (params.tau / gap) ** (1.0 / (k - 1))
    x_star = x0 * k ** (-1.0 / (k - 1))
    factor = (k - 1) * params.tau / k ** (k / (k - 1))
    return PositivityBound(x0=x0, x_star=x_star, upper=x0 * min(factor, 1.0))
