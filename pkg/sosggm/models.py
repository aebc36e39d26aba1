"""Data models module for the sosggm project."""

import math
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class Branch(str, Enum):
    """Whether a periodic word was solved with u_{-1} = u_1 or not."""

    MIRROR = "mirror"
    NON_MIRROR = "nonmirror"


class SymmetryKind(str, Enum):
    """Symmetry kinds of a periodic word."""

    MIRROR = "mirror"
    TWO_MIRROR = "two_mirror"
    NONE = "none"


class Verdict(str, Enum):
    """Normalisability verdict of a boundary law."""

    DIVERGENT = "divergent"
    NORMALISABLE = "normalisable"


class MarginalMode(str, Enum):
    """How increments are treated when computing GGM marginals."""

    EXACT = "exact"
    TRUNCATED = "trunc"


class Params(BaseModel):
    """Model parameters: tree order k, tau = 1/theta + theta and theta in (0, 1)."""

    model_config = ConfigDict(frozen=True)

    k: int
    tau: float
    theta: float

    @model_validator(mode="after")
    def check_bridge(self) -> "Params":
        """Validate ranges and the tau/theta relation."""
        if self.k < 2:
            raise ValueError("Tree order k must be >= 2")
        if not self.tau > 2.0:
            raise ValueError("tau must exceed 2")
        if not 0.0 < self.theta < 1.0:
            raise ValueError("theta must lie in (0, 1)")
        if abs(self.theta + 1.0 / self.theta - self.tau) >= 1e-12 * max(1.0, self.tau):
            raise ValueError("theta + 1/theta must equal tau")
        return self


class PositivityBound(BaseModel):
    """Upper bound for strictly positive trajectories with given u_{-1}, u_1."""

    model_config = ConfigDict(frozen=True)

    x0: float
    x_star: float
    upper: float


class Trajectory(BaseModel):
    """Values (u_{-1}, u_0, u_1, ...) produced by the forward recurrence."""

    model_config = ConfigDict(frozen=True)

    values: List[float]
    params: Params
    truncated_at: Optional[int] = None

    @field_validator("values")
    @classmethod
    def validate_anchor(cls, v: List[float]) -> List[float]:
        """Validate that u_0 = 1 and retained values are positive."""
        if len(v) < 2 or v[1] != 1.0:
            raise ValueError("Trajectory must start (u_-1, 1, ...)")
        if any(not value > 0.0 for value in v):
            raise ValueError("Retained trajectory values must be positive")
        return v

    @property
    def u_m1(self) -> float:
        """u_{-1}."""
        return self.values[0]

    @property
    def u_1(self) -> float:
        """u_1 (u_0 when only the anchor is present)."""
        return self.values[2] if len(self.values) > 2 else self.values[1]

    def u(self, i: int) -> float:
        """Return u_i for i >= -1."""
        return self.values[i + 1]


class PeriodicSolution(BaseModel):
    """A q-periodic positive word (u_0 = 1, u_1, ..., u_{q-1} = u_{-1})."""

    model_config = ConfigDict(frozen=True)

    word: List[float]
    q: int
    branch: Branch
    system_residual: float
    params: Params
    minimal_period: int
    family: str
    experimental: bool = False
    exhaustive: bool = True

    @model_validator(mode="after")
    def check_word(self) -> "PeriodicSolution":
        """Validate the word shape and anchoring."""
        if len(self.word) != self.q:
            raise ValueError("Word length must equal q")
        if abs(self.word[0] - 1.0) > 1e-12:
            raise ValueError("Word must be anchored at u_0 = 1")
        if any(not value > 0.0 for value in self.word):
            raise ValueError("Word entries must be positive")
        if self.q % self.minimal_period != 0:
            raise ValueError("Minimal period must divide q")
        return self

    @property
    def u_m1(self) -> float:
        """u_{-1} = u_{q-1}."""
        return self.word[-1]

    @property
    def u_1(self) -> float:
        """u_1 (u_0 for q = 1)."""
        return self.word[1 % self.q]


class RootSet(BaseModel):
    """Sorted positive roots with near-double flags and residuals."""

    model_config = ConfigDict(frozen=True)

    roots: List[float] = Field(default_factory=list)
    multiplicity_flags: List[bool] = Field(default_factory=list)
    residuals: List[float] = Field(default_factory=list)
    descartes_bound: int = 0

    @property
    def count(self) -> int:
        """Number of distinct roots."""
        return len(self.roots)

    @property
    def double_roots(self) -> List[float]:
        """Roots flagged as near-double."""
        return [r for r, flag in zip(self.roots, self.multiplicity_flags) if flag]


class BoundaryLaw(BaseModel):
    """Translation-invariant q-periodic boundary law z_i = u_i^k, z_0 = 1."""

    model_config = ConfigDict(frozen=True)

    z: List[float]
    q: int
    params: Params

    @model_validator(mode="after")
    def check_law(self) -> "BoundaryLaw":
        """Validate length, anchoring and positivity."""
        if len(self.z) != self.q:
            raise ValueError("Law length must equal q")
        if abs(self.z[0] - 1.0) > 1e-12:
            raise ValueError("Law must be anchored at z_0 = 1")
        if any(not value > 0.0 for value in self.z):
            raise ValueError("Law entries must be positive")
        return self

    def shifted(self, m: int) -> "BoundaryLaw":
        """Return the law z'_i = z_{i+m} / z_m (cyclic shift, re-anchored)."""
        m %= self.q
        anchor = self.z[m]
        z = [self.z[(i + m) % self.q] / anchor for i in range(self.q)]
        z[0] = 1.0
        return BoundaryLaw(z=z, q=self.q, params=self.params)


class ClassSums(BaseModel):
    """S[r] = sum of theta^|zeta| over integers zeta congruent to r mod q."""

    model_config = ConfigDict(frozen=True)

    S: List[float]
    q: int
    theta: float

    @property
    def total(self) -> float:
        """Sum over all residues, (1 + theta) / (1 - theta)."""
        return math.fsum(self.S)


class NormalisabilityReport(BaseModel):
    """Verdict on the normalisability sum together with its witness."""

    model_config = ConfigDict(frozen=True)

    verdict: Verdict
    witness: float
    summands: List[float]


class SymmetryClass(BaseModel):
    """Strongest symmetry of a word and the index equalities that certify it."""

    model_config = ConfigDict(frozen=True)

    kind: SymmetryKind
    p: Optional[int] = None
    certificate: List[Tuple[int, int]] = Field(default_factory=list)


class CanonicalWord(BaseModel):
    """Representative of a word up to unit-anchored cyclic shift."""

    model_config = ConfigDict(frozen=True)

    word: List[float]
    shift_applied: int


class TreeBall(BaseModel):
    """Finite ball of a Cayley tree around the root vertex 0."""

    model_config = ConfigDict(frozen=True)

    k: int
    radius: int
    depth: List[int]
    edges: List[Tuple[int, int]]
    boundary: List[int]
    paths: Dict[int, List[int]]

    @property
    def interior(self) -> List[int]:
        """Vertices of depth <= radius."""
        return [v for v, d in enumerate(self.depth) if d <= self.radius]

    @property
    def children(self) -> Dict[int, List[int]]:
        """Map vertex -> indices of the edges leaving it towards the boundary."""
        out: Dict[int, List[int]] = {v: [] for v in range(len(self.depth))}
        for index, (parent, _) in enumerate(self.edges):
            out[parent].append(index)
        return out


class MarginalTable(BaseModel):
    """Probabilities over class (or truncated increment) assignments of the ball edges."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    edges: List[Tuple[int, int]]
    support: np.ndarray
    probs: np.ndarray
    mode: MarginalMode
    q: int
    pinned: Optional[int] = None
    trunc: Optional[int] = None
    tail_bound: float = 0.0

    @property
    def total(self) -> float:
        """Sum of all probabilities."""
        return math.fsum(self.probs.tolist())


class ScanRow(BaseModel):
    """One row of a phase-diagram scan."""

    model_config = ConfigDict(frozen=True)

    tau: float
    q: int
    branch: str
    raw_count: int
    dedup_count: int
    roots: List[float] = Field(default_factory=list)
    transition: bool = False

    @model_validator(mode="after")
    def check_counts(self) -> "ScanRow":
        """Deduplication never increases the count."""
        if self.dedup_count > self.raw_count:
            raise ValueError("dedup_count must not exceed raw_count")
        return self


class VerificationReport(BaseModel):
    """Outcome of the checks run by ``sosggm verify`` at one (k, tau)."""

    k: int
    tau: float
    passed: bool
    checks: Dict[str, bool] = Field(default_factory=dict)
    counts: Dict[str, int] = Field(default_factory=dict)
    failures: List[str] = Field(default_factory=list)
