"""Boundary laws of periodic words: residuals, one-sided sums and normalisability."""

import math
from typing import List, Tuple

import numpy as np

from sosggm.exceptions import InternalError
from sosggm.logging_manager import get_logger
from sosggm.models import (
    BoundaryLaw,
    ClassSums,
    NormalisabilityReport,
    Params,
    PeriodicSolution,
    Verdict,
)

logger = get_logger(__name__)


def from_word(sol: PeriodicSolution) -> BoundaryLaw:
    """Return the law z_i = u_i^k of a periodic word."""
    k = sol.params.k
    z = [value**k for value in sol.word]
    z[0] = 1.0
    return BoundaryLaw(z=z, q=sol.q, params=sol.params)


def class_sums(params: Params, q: int) -> ClassSums:
    """
    Sum theta^|zeta| over each residue class of zeta mod q.

    S[0] = 1 + 2 theta^q / (1 - theta^q) and
    S[r] = (theta^r + theta^(q-r)) / (1 - theta^q) for 1 <= r < q.

    Args:
        params (Params): Model parameters
        q (int): Modulus

    Returns:
        ClassSums: The q class sums
    """
    theta = params.theta
    denom = 1.0 - theta**q
    sums = [1.0 + 2.0 * theta**q / denom]
    sums += [(theta**r + theta ** (q - r)) / denom for r in range(1, q)]
    return ClassSums(S=sums, q=q, theta=theta)


def truncated_class_sums(params: Params, q: int, cutoff: int = 200) -> List[float]:
    """Class sums by direct summation over |zeta| <= cutoff."""
    sums = [0.0] * q
    for zeta in range(-cutoff, cutoff + 1):
        sums[zeta % q] += params.theta ** abs(zeta)
    return sums


def transfer_sums(law: BoundaryLaw) -> np.ndarray:
    """N_i = sum_j theta^|i-j| z_(j mod q) = sum_r z_r S[(r - i) mod q] for i = 0..q-1."""
    q = law.q
    s = np.asarray(class_sums(law.params, q).S)
    index = (np.arange(q)[None, :] - np.arange(q)[:, None]) % q
    return s[index] @ np.asarray(law.z)


def residual_di1(law: BoundaryLaw) -> float:
    """
    Largest violation of z_i = (N_i / N_0)^k over one period.

    Args:
        law (BoundaryLaw): Periodic boundary law

    Returns:
        float: max_i |z_i - (N_i / N_0)^k|

    Raises:
        InternalError: If N_0 is not a positive finite number
    """
    n = transfer_sums(law)
    if not (math.isfinite(n[0]) and n[0] > 0.0):
        raise InternalError(f"Transfer sum N_0 = {n[0]} is not positive and finite")
    ratios = (n / n[0]) ** law.params.k
    return float(np.max(np.abs(np.asarray(law.z) - ratios)))


def lr_sums(law: BoundaryLaw, i: int) -> Tuple[float, float]:
    """
    One-sided sums l_i = sum_{j <= -1} theta^|i-j| z_j and r_i = sum_{j >= 1} theta^|i-j| z_j.

    Terms between i and 0 are added explicitly; beyond them the periodic
    tail is a geometric series over one period.

    Args:
        law (BoundaryLaw): Periodic boundary law
        i (int): Height index

    Returns:
        Tuple[float, float]: (l_i, r_i)
    """
    theta, q, z = law.params.theta, law.q, law.z
    denom = 1.0 - theta**q

    m = max(i, 0)
    right = math.fsum(theta ** abs(i - j) * z[j % q] for j in range(1, m + 1))
    period = math.fsum(theta**t * z[(m + t) % q] for t in range(1, q + 1))
    right += theta ** (m - i) * period / denom

    m = min(i, 0)
    left = math.fsum(theta ** abs(i - j) * z[j % q] for j in range(m, 0) if j <= -1)
    period = math.fsum(theta**t * z[(m - t) % q] for t in range(1, q + 1))
    left += theta ** (i - m) * period / denom
    return left, right


def normalisability_verdict(law: BoundaryLaw) -> NormalisabilityReport:
    """
    Decide whether the normalisability sum of a periodic law converges.

    The i-th summand is N_i^(k+1); it is periodic in i and positive, so the
    sum over all heights diverges. Its minimum over a period is the witness.

    Args:
        law (BoundaryLaw): Periodic boundary law

    Returns:
        NormalisabilityReport: Divergent verdict with witness and per-class summands

    Raises:
        InternalError: If a summand is not positive and finite
    """
    summands = transfer_sums(law) ** (law.params.k + 1)
    witness = float(np.min(summands))
    if not (math.isfinite(witness) and witness > 0.0):
        raise InternalError(f"Normalisability witness {witness} is not positive and finite")
    logger.debug(f"Law of period {law.q} diverges with witness {witness:.6g}")
    return NormalisabilityReport(
        verdict=Verdict.DIVERGENT, witness=witness, summands=[float(v) for v in summands]
    )
