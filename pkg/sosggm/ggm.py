"""Finite-volume marginals of pinned and mixed gradient Gibbs measures on a Cayley tree ball."""

from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from sosggm.boundary_law import class_sums
from sosggm.config import get_settings
from sosggm.exceptions import BallTooLarge, ConstraintViolation, EnumerationTooLarge
from sosggm.logging_manager import get_logger
from sosggm.models import BoundaryLaw, MarginalMode, MarginalTable, TreeBall

logger = get_logger(__name__)


def build_ball(k: int, radius: int) -> TreeBall:
    """
    Build the ball of given radius around the root of the Cayley tree of order k.

    Vertices are numbered breadth-first from the root 0; the root has k + 1
    children and every other vertex k. The edge leading to vertex v has index
    v - 1, so the edges of a smaller ball are a prefix of those of a larger one.
    Vertices at depth radius + 1 form the boundary.

    Args:
        k (int): Tree order
        radius (int): Ball radius R >= 0

    Returns:
        TreeBall: Depths, oriented edges, boundary vertices and root-to-boundary paths

    Raises:
        ConstraintViolation: If k < 2 or radius < 0
        BallTooLarge: If radius exceeds settings.MAX_RADIUS
    """
    if k < 2 or radius < 0:
        raise ConstraintViolation(f"Need k >= 2 and radius >= 0, got k={k}, radius={radius}")
    if radius > get_settings().MAX_RADIUS:
        raise BallTooLarge(f"Radius {radius} exceeds the limit {get_settings().MAX_RADIUS}")

    depth = [0]
    edges: List[Tuple[int, int]] = []
    paths: Dict[int, List[int]] = {0: []}
    frontier = [0]
    for level in range(1, radius + 2):
        next_frontier = []
        for parent in frontier:
            for _ in range(k + 1 if parent == 0 else k):
                child = len(depth)
                depth.append(level)
                edges.append((parent, child))
                paths[child] = paths[parent] + [child - 1]
                next_frontier.append(child)
        frontier = next_frontier
    return TreeBall(
        k=k,
        radius=radius,
        depth=depth,
        edges=edges,
        boundary=frontier,
        paths={v: paths[v] for v in frontier},
    )


def _support_size(base: int, edges: int) -> int:
    size = base**edges
    limit = get_settings().MAX_ENUMERATION
    if size > limit:
        raise EnumerationTooLarge(f"Support of size {base}^{edges} exceeds the limit {limit}")
    return size


def _assignments(base: int, edges: int, offset: int = 0) -> np.ndarray:
    """All assignments in row-major order, first edge most significant."""
    size = _support_size(base, edges)
    digits = np.unravel_index(np.arange(size), (base,) * edges)
    return np.stack(digits, axis=1).astype(np.int64) - offset


def _boundary_factor(ball: TreeBall, law: BoundaryLaw, support: np.ndarray, s: int) -> np.ndarray:
    z = np.asarray(law.z)
    factor = np.ones(support.shape[0])
    for y in ball.boundary:
        classes = (s + support[:, ball.paths[y]].sum(axis=1)) % law.q
        factor *= z[classes]
    return factor


def _edge_factor(law: BoundaryLaw, support: np.ndarray, mode: MarginalMode) -> np.ndarray:
    if mode == MarginalMode.EXACT:
        s = np.asarray(class_sums(law.params, law.q).S)
        return np.prod(s[support], axis=1)
    return law.params.theta ** np.abs(support).sum(axis=1)


def _check_residue(law: BoundaryLaw, s: int) -> None:
    if not 0 <= s < law.q:
        raise ConstraintViolation(f"Pinned class {s} is not in 0..{law.q - 1}")


def class_weights(
    ball: TreeBall,
    law: BoundaryLaw,
    s: Optional[int],
    mode: MarginalMode = MarginalMode.EXACT,
    trunc: Optional[int] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Unnormalised weights of every edge assignment.

    In exact mode the support is all class assignments and each edge carries
    the class sum S[c]; in truncated mode it is all increments in
    [-trunc, trunc] with weight theta^|zeta|. Boundary vertex y contributes
    z at the class of s plus the sum along its path. s = None sums over s.

    Args:
        ball (TreeBall): Finite volume
        law (BoundaryLaw): Periodic boundary law
        s (Optional[int]): Pinned class at the root, or None for the mixture
        mode (MarginalMode): Exact classes or truncated increments
        trunc (Optional[int]): Increment cut-off, required in truncated mode

    Returns:
        Tuple[np.ndarray, np.ndarray]: Support (rows of assignments) and weights
    """
    n_edges = len(ball.edges)
    if mode == MarginalMode.EXACT:
        support = _assignments(law.q, n_edges)
    else:
        if trunc is None or trunc < 0:
            raise ConstraintViolation("Truncated mode needs a non-negative cut-off")
        support = _assignments(2 * trunc + 1, n_edges, offset=trunc)

    edge_weight = _edge_factor(law, support, mode)
    pinned = range(law.q) if s is None else [s]
    boundary = sum(_boundary_factor(ball, law, support, residue) for residue in pinned)
    return support, edge_weight * boundary


def _table(
    ball: TreeBall,
    law: BoundaryLaw,
    s: Optional[int],
    mode: MarginalMode,
    trunc: Optional[int],
) -> MarginalTable:
    support, weights = class_weights(ball, law, s, mode, trunc)
    probs = weights / weights.sum()
    tail_bound = 0.0
    if mode == MarginalMode.TRUNCATED:
        theta = law.params.theta
        tail_bound = (ball.k + 1) * len(ball.edges) * theta ** (trunc + 1) / (1.0 - theta)
    logger.debug(f"Built a {mode.value} table with {probs.size} rows on {len(ball.edges)} edges")
    return MarginalTable(
        edges=ball.edges,
        support=support,
        probs=probs,
        mode=mode,
        q=law.q,
        pinned=s,
        trunc=trunc if mode == MarginalMode.TRUNCATED else None,
        tail_bound=tail_bound,
    )


def pinned_marginal(
    ball: TreeBall,
    law: BoundaryLaw,
    s: int,
    mode: MarginalMode = MarginalMode.EXACT,
    trunc: Optional[int] = None,
) -> MarginalTable:
    """
    Marginal of the GGM pinned at the root in height class s.

    Args:
        ball (TreeBall): Finite volume
        law (BoundaryLaw): Periodic boundary law
        s (int): Root class in 0..q-1
        mode (MarginalMode): Exact classes or truncated increments (default: exact)
        trunc (Optional[int]): Increment cut-off for truncated mode

    Returns:
        MarginalTable: Normalised probabilities

    Raises:
        ConstraintViolation: If s is not a residue mod q
        EnumerationTooLarge: If the support exceeds settings.MAX_ENUMERATION
    """
    _check_residue(law, s)
    return _table(ball, law, s, mode, trunc)


def mixed_marginal(
    ball: TreeBall,
    law: BoundaryLaw,
    mode: MarginalMode = MarginalMode.EXACT,
    trunc: Optional[int] = None,
) -> MarginalTable:
    """Marginal of the translation-invariant mixture: unnormalised pinned weights summed over s."""
    return _table(ball, law, None, mode, trunc)


def partition_function(ball: TreeBall, law: BoundaryLaw, s: Optional[int] = None) -> float:
    """
    Normaliser of the exact class table by a leaf-to-root transfer recursion.

    h_y(a) = z_a on the boundary and h_v(a) = prod over children c of
    sum_b S[(b - a) mod q] h_c(b) inside; the pinned normaliser is h_root(s)
    and the mixed one sums h_root over s.

    Args:
        ball (TreeBall): Finite volume
        law (BoundaryLaw): Periodic boundary law
        s (Optional[int]): Root class, or None for the mixture

    Returns:
        float: Partition function
    """
    q = law.q
    sums = np.asarray(class_sums(law.params, q).S)
    transfer = sums[(np.arange(q)[None, :] - np.arange(q)[:, None]) % q]
    z = np.asarray(law.z)
    children = ball.children
    h: Dict[int, np.ndarray] = {y: z for y in ball.boundary}
    for v in sorted(ball.interior, key=lambda vertex: -ball.depth[vertex]):
        message = np.ones(q)
        for edge in children[v]:
            message = message * (transfer @ h[ball.edges[edge][1]])
        h[v] = message
    if s is None:
        return float(h[0].sum())
    _check_residue(law, s)
    return float(h[0][s])


def class_projection(table: MarginalTable) -> MarginalTable:
    """Aggregate a truncated increment table onto edge classes mod q."""
    if table.mode == MarginalMode.EXACT:
        return table
    q, n_edges = table.q, table.support.shape[1]
    size = _support_size(q, n_edges)
    index = np.ravel_multi_index(tuple((table.support % q).T), (q,) * n_edges)
    probs = np.bincount(index, weights=table.probs, minlength=size)
    return MarginalTable(
        edges=table.edges,
        support=_assignments(q, n_edges),
        probs=probs,
        mode=MarginalMode.EXACT,
        q=q,
        pinned=table.pinned,
        tail_bound=table.tail_bound,
    )


def tv_distance(a: Union[MarginalTable, np.ndarray], b: Union[MarginalTable, np.ndarray]) -> float:
    """Total-variation distance of two probability vectors on the same support."""
    pa = a.probs if isinstance(a, MarginalTable) else np.asarray(a)
    pb = b.probs if isinstance(b, MarginalTable) else np.asarray(b)
    if pa.shape != pb.shape:
        raise ConstraintViolation(f"Support shapes differ: {pa.shape} vs {pb.shape}")
    return 0.5 * float(np.abs(pa - pb).sum())


def edge_class_marginal(table: MarginalTable, edge: int) -> np.ndarray:
    """Law of the class of one edge."""
    return np.bincount(table.support[:, edge] % table.q, weights=table.probs, minlength=table.q)


def increment_marginal(table: MarginalTable, edge: int) -> Dict[int, float]:
    """Law of the increment of one edge in a truncated table."""
    if table.mode != MarginalMode.TRUNCATED or table.trunc is None:
        raise ConstraintViolation("Increment marginals need a truncated table")
    r = table.trunc
    counts = np.bincount(table.support[:, edge] + r, weights=table.probs, minlength=2 * r + 1)
    return {zeta: float(counts[zeta + r]) for zeta in range(-r, r + 1)}


def consistency_check(
    law: BoundaryLaw,
    k: int,
    r_small: int,
    r_large: int,
    mode: MarginalMode = MarginalMode.EXACT,
    trunc: Optional[int] = None,
    s: Optional[int] = None,
) -> float:
    """
    Compare the marginal on a small ball with the projection of a larger ball's table.

    Args:
        law (BoundaryLaw): Periodic boundary law
        k (int): Tree order
        r_small (int): Radius of the small ball
        r_large (int): Radius of the large ball, at most 3
        mode (MarginalMode): Exact classes or truncated increments (default: exact)
        trunc (Optional[int]): Increment cut-off for truncated mode
        s (Optional[int]): Pinned root class, or None for the mixed measure

    Returns:
        float: Total-variation distance between the two small-ball marginals
    """
    if not 0 <= r_small < r_large <= 3:
        raise ConstraintViolation(f"Need 0 <= r_small < r_large <= 3, got {r_small}, {r_large}")
    small_ball, large_ball = build_ball(k, r_small), build_ball(k, r_large)
    small = _table(small_ball, law, s, mode, trunc)
    large = _table(large_ball, law, s, mode, trunc)
    base = law.q if mode == MarginalMode.EXACT else 2 * trunc + 1
    n_small, n_large = len(small_ball.edges), len(large_ball.edges)
    projected = large.probs.reshape((base,) * n_large).sum(axis=tuple(range(n_small, n_large)))
    distance = tv_distance(small.probs, projected.reshape(-1))
    logger.info(f"Consistency {r_small}->{r_large}: TV = {distance:.3e}", ":straight_ruler:")
    return distance
