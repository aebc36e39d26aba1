"""Forward and backward iteration of the boundary-law recurrence."""

from typing import List, Optional, Sequence

from sosggm.config import get_settings
from sosggm.exceptions import ConstraintViolation
from sosggm.logging_manager import get_logger
from sosggm.models import Params, Trajectory

logger = get_logger(__name__)

DEFAULT_Q_MAX = 12


def step_forward(u_prev: float, u_cur: float, u_m1: float, u_1: float, params: Params) -> float:
    """Return u_{i+1} = (u_{-1} + u_1 - tau) * u_i^k + tau * u_i - u_{i-1}."""
    return (u_m1 + u_1 - params.tau) * u_cur**params.k + params.tau * u_cur - u_prev


def step_backward(u_next: float, u_cur: float, u_m1: float, u_1: float, params: Params) -> float:
    """Return u_{i-1} from u_{i+1} and u_i; the same map read in the other direction."""
    return (u_m1 + u_1 - params.tau) * u_cur**params.k + params.tau * u_cur - u_next


def closure_residual(word: Sequence[float], params: Params) -> float:
    """
    Largest violation of u_i^k (u_{-1} + u_1 - tau) = u_{i-1} + u_{i+1} - tau u_i over one period.

    Indices are cyclic, so u_{-1} = word[-1] and u_1 = word[1 % q].
    """
    q = len(word)
    c = word[-1] + word[1 % q] - params.tau
    return max(
        abs(word[i] ** params.k * c - (word[i - 1] + word[(i + 1) % q] - params.tau * word[i]))
        for i in range(q)
    )


def generate(u_m1: float, u_1: float, n: int, params: Params) -> Trajectory:
    """
    Iterate the recurrence n times from (u_{-1}, u_0 = 1).

    The first step reproduces u_1 identically. Iteration stops at the first
    non-positive value; its position in ``values`` is stored as ``truncated_at``
    and the value itself is not retained.

    Args:
        u_m1 (float): u_{-1}
        u_1 (float): u_1
        n (int): Number of forward steps
        params (Params): Model parameters

    Returns:
        Trajectory: (u_{-1}, 1, u_1, ..., u_n) or a shorter truncated prefix

    Raises:
        ConstraintViolation: If u_{-1} + u_1 >= tau or a start value is not positive
    """
    if u_m1 <= 0.0 or u_1 <= 0.0:
        raise ConstraintViolation("u_-1 and u_1 must be positive")
    if u_m1 + u_1 >= params.tau:
        raise ConstraintViolation(
            f"u_-1 + u_1 = {u_m1 + u_1} must be smaller than tau = {params.tau}"
        )

    values: List[float] = [u_m1, 1.0]
    truncated_at: Optional[int] = None
    for _ in range(n):
        if len(values) == 2:
            nxt = u_1
        else:
            nxt = step_forward(values[-2], values[-1], u_m1, u_1, params)
        if not nxt > 0.0:
            truncated_at = len(values)
            logger.debug(f"Trajectory left the positive cone at position {truncated_at}")
            break
        values.append(nxt)
    return Trajectory(values=values, params=params, truncated_at=truncated_at)


def detect_period(traj: Trajectory, tol: Optional[float] = None, q_max: int = DEFAULT_Q_MAX) -> Optional[int]:
    """
    Find the smallest q <= q_max for which the trajectory repeats within tol.

    Only a window of three periods is compared since errors grow quickly
    around non-attracting periodic orbits. Truncated trajectories never close.

    Args:
        traj (Trajectory): Trajectory to inspect
        tol (Optional[float]): Closure tolerance (default: settings.PERIOD_TOL)
        q_max (int): Largest period tried (default: 12)

    Returns:
        Optional[int]: The detected period or None
    """
    if traj.truncated_at is not None:
        return None
    tol = get_settings().PERIOD_TOL if tol is None else tol
    values = traj.values
    for q in range(1, q_max + 1):
        window = min(len(values), 3 * q + 2)
        if window < 2 * q + 1:
            break
        if all(abs(values[i + q] - values[i]) < tol for i in range(window - q)):
            return q
    return None
