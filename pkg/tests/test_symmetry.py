"""Tests for the symmetry module."""

import pytest

from sosggm.base_solver import nontrivial
from sosggm.models import Branch, SymmetryKind
from sosggm.params import theta_from_tau
from sosggm.periodic_systems import solve, solve_q3_nonmirror, solve_q4_nonmirror
from sosggm.symmetry import canonical_form, classify, dedup, minimal_period, two_mirror_orders


@pytest.mark.parametrize(
    "word,expected",
    [([1.0, 1.0, 1.0], 1), ([1.0, 2.0, 1.0, 2.0], 2), ([1.0, 2.0, 3.0], 3), ([1.0, 0.5, 0.5, 1.0, 0.5, 0.5], 3)],
)
def test_minimal_period(word, expected):
    """Test the smallest cyclic period of a word."""
    assert minimal_period(word) == expected


def test_classify_mirror_word():
    """Test that (1, x, y, x) is mirror symmetric."""
    result = classify([1.0, 0.3, 0.02, 0.3], 4)
    assert result.kind == SymmetryKind.MIRROR
    assert (1, 3) in result.certificate


def test_classify_two_mirror_word():
    """Test that the alternating word (1, y, 1, x) is two-mirror symmetric with p = 2."""
    result = classify([1.0, 2.5, 1.0, 0.6], 4)
    assert result.kind == SymmetryKind.TWO_MIRROR
    assert result.p == 2


def test_classify_without_symmetry():
    """Test that a generic word has no symmetry."""
    assert classify([1.0, 2.0, 3.0, 4.0], 4).kind == SymmetryKind.NONE


def test_two_mirror_orders():
    """Test the inner anchors of (1, 1, y, y)."""
    assert two_mirror_orders([1.0, 1.0, 3.7, 3.7], 4) == [1]


def test_canonical_form_prefers_smaller_second_entry():
    """Test the choice among unit-anchored rotations."""
    small = canonical_form([1.0, 0.27, 0.27, 1.0], 4)
    assert small.word == [1.0, 0.27, 0.27, 1.0]
    assert small.shift_applied == 0
    large = canonical_form([1.0, 3.7, 3.7, 1.0], 4)
    assert large.word == [1.0, 1.0, 3.7, 3.7]
    assert large.shift_applied == 3


def test_canonical_form_without_anchor_rescales():
    """Test that a word without unit entries is compared over all rotations."""
    result = canonical_form([2.0, 4.0, 8.0], 3)
    assert result.word == pytest.approx([1.0, 0.25, 0.5])
    assert result.shift_applied == 2


def test_dedup_identifies_rotations():
    """Test that (1, 1, x) and (1, x, 1) describe one boundary law."""
    params = theta_from_tau(6.0, 2)
    raw = solve_q3_nonmirror(params)
    classes = dedup(raw)
    assert len(nontrivial(raw)) == 4
    assert len(nontrivial(classes)) == 2
    assert [s.q for s in classes if s.minimal_period == 1] == [1]


def test_dedup_keeps_reciprocal_classes():
    """Test that (1, y, y, 1) and (1, 1/y, 1/y, 1) stay distinct."""
    classes = nontrivial(dedup(solve_q4_nonmirror(theta_from_tau(6.0, 2))))
    assert len(classes) == 2
    assert all(s.branch == Branch.NON_MIRROR for s in classes)


def test_dedup_is_order_independent(params_k2_tau8):
    """Test that the classes do not depend on the input order."""
    raw = solve(params_k2_tau8, 4)
    forward = [s.word for s in dedup(raw)]
    backward = [s.word for s in dedup(list(reversed(raw)))]
    assert forward == backward


def test_dedup_merges_trivial_words_of_all_periods(params_k2_tau8):
    """Test that constant words of different q form one class."""
    raw = solve(params_k2_tau8, 3) + solve(params_k2_tau8, 5)
    trivial = [s for s in dedup(raw) if s.minimal_period == 1]
    assert len(trivial) == 1
    assert trivial[0].word == [1.0]
