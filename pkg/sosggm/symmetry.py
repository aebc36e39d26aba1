"""Symmetry classification of periodic words and deduplication of boundary laws."""

from typing import List, Optional, Sequence, Tuple

from sosggm.config import get_settings
from sosggm.models import Branch, CanonicalWord, PeriodicSolution, SymmetryClass, SymmetryKind
from sosggm.recurrence import closure_residual


def _close(a: float, b: float, tol: float) -> bool:
    return abs(a - b) <= tol


def minimal_period(word: Sequence[float], tol: Optional[float] = None) -> int:
    """
    Return the smallest p dividing len(word) with word[i + p] = word[i] cyclically.

    Args:
        word (Sequence[float]): Periodic word
        tol (Optional[float]): Entrywise tolerance (default: settings.DEDUP_TOL)

    Returns:
        int: Minimal period
    """
    tol = get_settings().DEDUP_TOL if tol is None else tol
    q = len(word)
    for p in range(1, q + 1):
        if q % p == 0 and all(_close(word[(i + p) % q], word[i], tol) for i in range(q)):
            return p
    return q


def _mirror_certificate(word: Sequence[float], q: int, tol: float) -> Optional[List[Tuple[int, int]]]:
    pairs = [(i, q - i) for i in range(-1, q // 2 + 1)]
    if all(_close(word[i % q], word[j % q], tol) for i, j in pairs):
        return pairs
    return None


def _two_mirror_certificate(
    word: Sequence[float], q: int, p: int, tol: float
) -> Optional[List[Tuple[int, int]]]:
    pairs = [(i, p - i) for i in range(-1, p // 2 + 1)]
    pairs += [(p + j, q - j) for j in range(0, (q - p) // 2 + 1)]
    if all(_close(word[i % q], word[j % q], tol) for i, j in pairs):
        return pairs
    return None


def two_mirror_orders(word: Sequence[float], q: int, tol: Optional[float] = None) -> List[int]:
    """All p < q for which the word is two-mirror symmetric with inner anchor p."""
    tol = get_settings().COMPARE_TOL if tol is None else tol
    return [p for p in range(1, q) if _two_mirror_certificate(word, q, p, tol) is not None]


def classify(word: Sequence[float], q: int, tol: Optional[float] = None) -> SymmetryClass:
    """
    Return the strongest symmetry of a q-periodic word.

    Mirror (u_i = u_{q-i}) is checked first, then two-mirror symmetry over
    all admissible p in increasing order. Indices are taken mod q, so
    u_{-1} = u_{q-1}.

    Args:
        word (Sequence[float]): Word (u_0, ..., u_{q-1})
        q (int): Period
        tol (Optional[float]): Entrywise tolerance (default: settings.COMPARE_TOL)

    Returns:
        SymmetryClass: Kind, order p for two-mirror words and the verified equalities
    """
    tol = get_settings().COMPARE_TOL if tol is None else tol
    certificate = _mirror_certificate(word, q, tol)
    if certificate is not None:
        return SymmetryClass(kind=SymmetryKind.MIRROR, certificate=certificate)
    for p in range(1, q):
        certificate = _two_mirror_certificate(word, q, p, tol)
        if certificate is not None:
            return SymmetryClass(kind=SymmetryKind.TWO_MIRROR, p=p, certificate=certificate)
    return SymmetryClass(kind=SymmetryKind.NONE)


def _lex_less(a: Sequence[float], b: Sequence[float], tol: float) -> bool:
    for x, y in zip(a, b):
        if x < y - tol:
            return True
        if x > y + tol:
            return False
    return False


def canonical_form(word: Sequence[float], q: int) -> CanonicalWord:
    """
    Pick the representative of a word under anchored cyclic shifts.

    Candidates are the rotations starting at an entry equal to 1, each
    divided by its first entry; without such an entry every rotation is a
    candidate. The lexicographically smallest candidate wins, ties going to
    the smallest shift.

    Args:
        word (Sequence[float]): Positive word of length q
        q (int): Period

    Returns:
        CanonicalWord: Canonical rotation and the shift applied
    """
    settings = get_settings()
    anchors = [m for m in range(q) if _close(word[m], 1.0, settings.DEDUP_TOL)] or list(range(q))
    best: Optional[List[float]] = None
    best_shift = 0
    for m in anchors:
        rotated = [word[(m + i) % q] for i in range(q)]
        scaled = [value / rotated[0] for value in rotated]
        scaled[0] = 1.0
        if best is None or _lex_less(scaled, best, settings.COMPARE_TOL):
            best, best_shift = scaled, m
    return CanonicalWord(word=best or [], shift_applied=best_shift)


def _class_key(solution: PeriodicSolution) -> Tuple[int, List[float]]:
    p = minimal_period(solution.word)
    return p, canonical_form(solution.word[:p], p).word


def dedup(solutions: Sequence[PeriodicSolution]) -> List[PeriodicSolution]:
    """
    Keep one representative per boundary-law class.

    Each word is reduced to its minimal period and put in canonical form;
    words with equal reduced canonical forms describe the same GGM. The
    representative carries the reduced canonical word, so the constant word
    is always reported with q = 1. The result is sorted by (q, word) and
    does not depend on the input order.

    Args:
        solutions (Sequence[PeriodicSolution]): Raw solutions, possibly from several branches

    Returns:
        List[PeriodicSolution]: Deduplicated classes
    """
    tol = get_settings().DEDUP_TOL
    keyed = sorted(
        ((_class_key(s), s) for s in solutions),
        key=lambda item: (item[0][0], item[0][1], item[1].experimental, item[1].family),
    )
    classes: List[Tuple[Tuple[int, List[float]], PeriodicSolution]] = []
    for key, solution in keyed:
        if any(
            key[0] == seen[0] and all(_close(a, b, tol) for a, b in zip(key[1], seen[1]))
            for seen, _ in classes
        ):
            continue
        classes.append((key, solution))

    result = []
    for (p, word), solution in classes:
        branch = Branch.MIRROR if _close(word[-1], word[1 % p], tol) else Branch.NON_MIRROR
        result.append(
            PeriodicSolution(
                word=word,
                q=p,
                branch=branch,
                system_residual=closure_residual(word, solution.params),
                params=solution.params,
                minimal_period=p,
                family=solution.family,
                experimental=solution.experimental,
                exhaustive=solution.exhaustive,
            )
        )
    return sorted(result, key=lambda s: (s.q, s.word))
