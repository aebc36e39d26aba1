"""Property-based tests of the recurrence, symmetry and class-sum invariants."""

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from sosggm.boundary_law import class_sums
from sosggm.models import SymmetryKind
from sosggm.params import positivity_bound, theta_from_tau
from sosggm.recurrence import generate, step_backward, step_forward
from sosggm.symmetry import canonical_form, classify, two_mirror_orders

PROPERTY_SETTINGS = settings(
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.function_scoped_fixture],
)

orders = st.integers(min_value=2, max_value=4)
taus = st.floats(min_value=2.1, max_value=12.0)
fractions = st.floats(min_value=0.01, max_value=0.99)
entries = st.floats(min_value=0.05, max_value=20.0).filter(lambda v: abs(v - 1.0) > 1e-3)
quarters = st.integers(min_value=1, max_value=80).map(lambda n: n / 4.0)


def _mirror_word(values, q):
    half = [1.0] + values
    return [half[min(i, q - i)] for i in range(q)]


@PROPERTY_SETTINGS
@given(k=orders, tau=taus, a=fractions, b=fractions)
def test_positive_trajectories_stay_bounded(k, tau, a, b):
    """Values with a positive successor never exceed the positivity bound."""
    params = theta_from_tau(tau, k)
    u_m1, u_1 = tau * a / 2.0, tau * b / 2.0
    bound = positivity_bound(params, u_m1, u_1)
    traj = generate(u_m1, u_1, 30, params)
    for value in traj.values[2:-1]:
        assert value <= bound.upper * (1.0 + 1e-9)
    assert bound.upper <= bound.x0


@PROPERTY_SETTINGS
@given(k=orders, tau=taus, a=fractions, b=fractions, u_prev=st.floats(0.05, 5.0), u_cur=st.floats(0.05, 5.0))
def test_backward_step_inverts_forward_step(k, tau, a, b, u_prev, u_cur):
    """Reading the recurrence backwards recovers the previous value."""
    params = theta_from_tau(tau, k)
    u_m1, u_1 = tau * a / 2.0, tau * b / 2.0
    u_next = step_forward(u_prev, u_cur, u_m1, u_1, params)
    recovered = step_backward(u_next, u_cur, u_m1, u_1, params)
    assert recovered == pytest.approx(u_prev, rel=1e-9, abs=1e-9 * (1.0 + abs(u_next)))


@PROPERTY_SETTINGS
@given(q=st.integers(min_value=2, max_value=8), data=st.data())
def test_mirror_words_classify_as_mirror(q, data):
    """A word with u_i = u_(q-i) is mirror symmetric with at most q // 2 + 1 distinct values."""
    values = data.draw(st.lists(entries, min_size=q // 2, max_size=q // 2))
    word = _mirror_word(values, q)
    assert classify(word, q).kind == SymmetryKind.MIRROR
    assert len(set(word)) <= q // 2 + 1


@PROPERTY_SETTINGS
@given(x=entries, y=entries)
def test_anchored_four_periodic_words_are_two_mirror(x, y):
    """Words (1, y, y, 1) have the inner anchor p = 3 and (1, 1, y, y) has p = 1."""
    assert 3 in two_mirror_orders([1.0, y, y, 1.0], 4)
    assert 1 in two_mirror_orders([1.0, 1.0, y, y], 4)
    if abs(x - y) > 1e-3:
        assert classify([1.0, y, 1.0, x], 4).kind == SymmetryKind.TWO_MIRROR


@PROPERTY_SETTINGS
@given(q=st.integers(min_value=2, max_value=7), data=st.data())
def test_canonical_form_is_shift_invariant(q, data):
    """Rotating to any unit entry leaves the canonical form unchanged, and it is idempotent."""
    rest = data.draw(st.lists(quarters, min_size=q - 1, max_size=q - 1))
    word = [1.0] + rest
    canonical = canonical_form(word, q).word
    assert canonical_form(canonical, q).word == canonical
    for m in range(q):
        if word[m] == 1.0:
            rotated = word[m:] + word[:m]
            assert canonical_form(rotated, q).word == canonical


@PROPERTY_SETTINGS
@given(tau=taus, q=st.integers(min_value=1, max_value=9))
def test_class_sums_add_up(tau, q):
    """The class sums of theta^|zeta| add up to (1 + theta) / (1 - theta)."""
    params = theta_from_tau(tau, 2)
    theta = params.theta
    sums = class_sums(params, q)
    assert len(sums.S) == q
    assert all(s > 0.0 for s in sums.S)
    assert sums.total == pytest.approx((1.0 + theta) / (1.0 - theta), rel=1e-12)
