"""Tests for the figures module."""

import csv
import io
import math

import pytest

from sosggm.figures import ZETA_WINDOWS, column, crossings, figure_data, mirror_window
from sosggm.periodic_systems import g_value


def _rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_mirror_window_at_tau_8():
    """Test the default plotting window."""
    assert mirror_window(8.0) == pytest.approx((0.12, 3.87))


def test_fig2_has_seven_crossings():
    """Test that phi(x) - x changes sign at the seven 5-periodic mirror roots."""
    text = figure_data("fig2", tau=8.0, grid=2000)
    assert text.split("\n", 1)[0] == "x,value"
    assert crossings(column(text, "value")) == 7


def test_fig2_crossings_have_positive_g():
    """Test that g is positive wherever phi(x) - x changes sign."""
    rows = _rows(figure_data("fig2", grid=2000))
    for left, right in zip(rows, rows[1:]):
        if float(left["value"]) * float(right["value"]) < 0.0:
            assert g_value(2, 8.0, float(left["x"])) > 0.0


def test_fig1_columns():
    """Test that g(x1) stays positive and x3, x4 appear from 2(1 + sqrt 5) on."""
    tau_m = 2.0 * (1.0 + math.sqrt(5.0))
    rows = _rows(figure_data("fig1", grid=300))
    assert len(rows) == 300
    assert all(float(row["g_x1"]) > 0.0 for row in rows)
    for row in rows:
        assert (row["g_x3"] != "") == (float(row["tau"]) >= tau_m)


def test_fig3_length():
    """Test one row per grid point."""
    assert len(column(figure_data("fig3", grid=500), "value")) == 500


def test_fig4_windows():
    """Test the window column and the 3 + 2 + 1 roots of zeta at tau = 8."""
    rows = _rows(figure_data("fig4", grid=2000))
    assert {row["window"] for row in rows} == {str(i) for i in range(len(ZETA_WINDOWS))}
    per_window = [
        crossings([float(row["value"]) for row in rows if row["window"] == str(i)])
        for i in range(len(ZETA_WINDOWS))
    ]
    assert per_window == [3, 2, 1]


def test_unknown_figure():
    """Test that unknown names raise KeyError."""
    with pytest.raises(KeyError):
        figure_data("fig9")
