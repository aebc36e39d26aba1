"""Tests for the scan module."""

import math

import pytest

from sosggm.exceptions import ConstraintViolation
from sosggm.scan import SCAN_HEADER, run_scan, scan_csv, scan_row, transition_taus


def test_scan_row_counts_q3_mirror():
    """Test raw and class counts of the 3-periodic mirror branch above both critical values."""
    row = scan_row(2, 5.5, 3, symmetry="mirror")
    assert row.raw_count == 3
    assert row.dedup_count == 3
    assert len(row.roots) == 2
    assert row.roots == sorted(row.roots)
    assert row.branch == "mirror"
    assert not row.transition


def test_q3_mirror_transition(expected_values):
    """Test that the scan locates the onset at 2(1 + sqrt 2)."""
    tau_c = expected_values["critical"]["tau_c_k2"]
    rows = run_scan(2, 3, 3.0, 4.9, 190, symmetry="mirror")
    grid = [row for row in rows if not row.transition]
    assert len(grid) == 191
    assert [row.tau for row in grid] == sorted(row.tau for row in grid)
    taus = transition_taus(rows)
    assert len(taus) == 1
    assert taus[0] == pytest.approx(tau_c, abs=1e-4)


def test_q4_nonmirror_transition():
    """Test that the 4-periodic non-mirror words appear at tau = 4 for k = 2."""
    rows = run_scan(2, 4, 3.5, 4.55, 20, branch="q4_nonmirror")
    assert all(row.branch == "q4_nonmirror" for row in rows)
    taus = transition_taus(rows)
    assert len(taus) == 1
    assert taus[0] == pytest.approx(4.0, abs=1e-4)


def test_double_root_transition_is_resolved_to_merge_width():
    """Test that the double root x = 1 at tau_0 = 5 shows as a window of a few 1e-6 around 5."""
    rows = run_scan(2, 3, 4.9, 5.1, 4, symmetry="mirror")
    counts = [row.dedup_count for row in rows if not row.transition]
    assert counts == [3, 3, 2, 3, 3]
    taus = transition_taus(rows)
    assert len(taus) == 2
    assert all(abs(tau - 5.0) < 5e-6 for tau in taus)


@pytest.mark.slow
def test_type_up_first_transition(expected_values):
    """Test the first change of the type-up class count for k = 3."""
    lo, hi = expected_values["type_up_k3"]["first_transition"]
    rows = run_scan(3, 4, 2.9, 3.1, 20, branch="q4_type_up")
    taus = transition_taus(rows)
    assert taus
    assert lo < min(taus) < hi + 1e-9


def test_scan_csv_format():
    """Test the header and the cell formatting of a scan document."""
    rows = run_scan(2, 3, 5.5, 6.5, 2, symmetry="mirror")
    lines = scan_csv(rows).strip().split("\n")
    assert lines[0] == ",".join(SCAN_HEADER)
    first = lines[1].split(",")
    assert first[0] == "5.5"
    assert first[1] == "3"
    roots = first[5].split(";")
    assert len(roots) == 2
    assert all(len(value.replace(".", "").lstrip("0")) <= 12 for value in roots)
    assert first[6] == "0"


def test_scan_rejects_bad_range():
    """Test the range checks."""
    with pytest.raises(ConstraintViolation):
        run_scan(2, 3, 2.0, 4.0, 10)
    with pytest.raises(ConstraintViolation):
        run_scan(2, 3, 5.0, 4.0, 10)
    with pytest.raises(ConstraintViolation):
        run_scan(2, 3, 3.0, 4.0, 0)


def test_unknown_branch():
    """Test that unregistered branches are refused."""
    with pytest.raises(ConstraintViolation):
        scan_row(2, 5.0, 4, branch="q4_sideways")


def test_constant_scan_has_no_transition():
    """Test that the 1-periodic branch never changes count."""
    rows = run_scan(2, 1, 2.5, 9.5, 14, branch="q1")
    assert transition_taus(rows) == []
    assert all(row.raw_count == 1 and row.dedup_count == 1 for row in rows)
    assert not any(math.isnan(row.tau) for row in rows)
