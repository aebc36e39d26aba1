"""Tests for the recurrence module."""

import math

import pytest

from sosggm.exceptions import ConstraintViolation
from sosggm.params import theta_from_tau
from sosggm.periodic_systems import q4_mirror_closed_forms
from sosggm.recurrence import (
    closure_residual,
    detect_period,
    generate,
    step_backward,
    step_forward,
)


def test_generate_starts_with_initial_values(params_k2_tau5):
    """Test that the trajectory begins (u_-1, 1, u_1)."""
    traj = generate(0.7, 1.3, 5, params_k2_tau5)
    assert traj.values[:3] == [0.7, 1.0, 1.3]
    assert traj.u_m1 == 0.7
    assert traj.u_1 == 1.3
    assert traj.u(0) == 1.0


def test_generate_follows_forward_step(params_k2_tau5):
    """Test that every later value is one forward step of the two before it."""
    traj = generate(0.7, 1.3, 6, params_k2_tau5)
    for i in range(3, len(traj.values)):
        expected = step_forward(traj.values[i - 2], traj.values[i - 1], 0.7, 1.3, params_k2_tau5)
        assert traj.values[i] == expected


def test_backward_step_inverts_forward_step(params_k2_tau5):
    """Test that reading the map backwards recovers the previous value."""
    u_prev, u_cur = 0.9, 1.1
    u_next = step_forward(u_prev, u_cur, 0.9, 1.4, params_k2_tau5)
    assert step_backward(u_next, u_cur, 0.9, 1.4, params_k2_tau5) == pytest.approx(u_prev, abs=1e-14)


def test_constant_orbit_has_period_one(params_k2_tau5):
    """Test that u_-1 = u_1 = 1 stays at 1 forever."""
    traj = generate(1.0, 1.0, 20, params_k2_tau5)
    assert all(value == 1.0 for value in traj.values)
    assert detect_period(traj) == 1


def test_three_periodic_mirror_orbit_is_detected():
    """Test period detection on the k = 2, tau = 6 word (1, x, x) with x = 1 - 1/sqrt(2)."""
    params = theta_from_tau(6.0, 2)
    x = 1.0 - 1.0 / math.sqrt(2.0)
    traj = generate(x, x, 9, params)
    assert traj.truncated_at is None
    assert detect_period(traj, tol=1e-6) == 3


def test_four_periodic_mirror_orbit_is_detected(params_k2_tau5):
    """Test period detection on the k = 2, tau = 5 word (1, x, y, x) with the larger closed-form x."""
    x = q4_mirror_closed_forms(5.0)[0]
    traj = generate(x, x, 12, params_k2_tau5)
    assert traj.truncated_at is None
    assert detect_period(traj, tol=1e-6) == 4


def test_truncation_at_first_non_positive_value(params_k2_tau5):
    """Test that iteration stops when a value leaves the positive cone."""
    traj = generate(0.1, 4.8, 10, params_k2_tau5)
    assert traj.truncated_at == 5
    assert len(traj.values) == 5
    assert all(value > 0.0 for value in traj.values)
    assert detect_period(traj) is None


@pytest.mark.parametrize("u_m1,u_1", [(3.0, 2.0), (4.0, 2.0), (0.0, 1.0), (1.0, -1.0)])
def test_generate_rejects_inadmissible_start(params_k2_tau5, u_m1, u_1):
    """Test the u_-1 + u_1 < tau and positivity preconditions."""
    with pytest.raises(ConstraintViolation):
        generate(u_m1, u_1, 3, params_k2_tau5)


def test_closure_residual_of_trivial_word(params_k2_tau5):
    """Test that the all-ones word closes exactly."""
    assert closure_residual([1.0], params_k2_tau5) == 0.0
    assert closure_residual([1.0, 1.0, 1.0], params_k2_tau5) == 0.0


def test_closure_residual_detects_non_solution(params_k2_tau5):
    """Test that an arbitrary word does not close."""
    assert closure_residual([1.0, 2.0, 0.5], params_k2_tau5) > 1e-3
