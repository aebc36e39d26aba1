"""Tests for the periodic boundary-law systems."""

import math
from itertools import combinations

import numpy as np
import pytest

from sosggm.base_solver import nontrivial
from sosggm.exceptions import ConstraintViolation
from sosggm.models import Branch
from sosggm.params import theta_from_tau
from sosggm.periodic_systems import (
    SOLVER_REGISTRY,
    branches_for,
    g_value,
    get_solver,
    q3_nonmirror_closed_forms,
    q4_mirror_closed_forms,
    q4_nonmirror_closed_forms,
    search_periodic_numeric,
    solve,
    solve_q1,
    solve_q2_mirror,
    solve_q3_mirror,
    solve_q3_nonmirror,
    solve_q4_mirror,
    solve_q4_nonmirror,
    solve_q4_type_up,
    solve_q5_mirror,
    solve_q5_nonmirror,
    zeta_polynomial,
)
from sosggm.polyroot import deflate_by_root, isolate_positive_roots
from sosggm.recurrence import closure_residual, generate
from sosggm.symmetry import dedup, minimal_period
from sosggm.systems.mirror import q5_mirror_family
from sosggm.systems.nonmirror import q5_nonmirror_family


def _sorted_values(solutions, index):
    return sorted(s.word[index] for s in nontrivial(solutions))


def test_registry_branches():
    """Test the registry lookup by period and symmetry side."""
    assert branches_for(4) == ["q4_mirror", "q4_nonmirror", "q4_type_up"]
    assert branches_for(4, "mirror") == ["q4_mirror"]
    assert branches_for(5, "nonmirror") == ["q5_nonmirror"]
    assert set(SOLVER_REGISTRY) >= {"q1", "q3_mirror", "q5_nonmirror"}


def test_get_solver_returns_shared_instance():
    """Test that solvers are created once and reused."""
    assert get_solver("q3_mirror") is get_solver("q3_mirror")


def test_solve_uses_cache():
    """Test that a repeated solve is served from the cache."""
    params = theta_from_tau(5.25, 2)
    solver = get_solver("q3_mirror")
    hits = solver.metrics_manager.get("cache_hits")
    first = solver.solve(params)
    second = solver.solve(params)
    assert first is second
    assert solver.metrics_manager.get("cache_hits") == hits + 1


def test_q1_is_trivial(params_k2_tau5):
    """Test that the only 1-periodic solution is the constant word."""
    solutions = solve_q1(params_k2_tau5)
    assert len(solutions) == 1
    assert solutions[0].word == [1.0]
    assert solutions[0].system_residual == 0.0


def test_every_branch_starts_with_trivial_word(params_k2_tau8):
    """Test that each solver reports the all-ones word first."""
    for name in SOLVER_REGISTRY:
        first = get_solver(name).solve(params_k2_tau8)[0]
        assert all(value == 1.0 for value in first.word)
        assert first.minimal_period == 1


def test_q2_mirror_roots(expected_values):
    """Test the 2-periodic words (1, x) with x = (3 +- sqrt 5) / 2 at tau = 8."""
    data = expected_values["q2_mirror"]
    solutions = solve_q2_mirror(theta_from_tau(data["tau"], data["k"]))
    assert _sorted_values(solutions, 1) == pytest.approx(data["roots"], abs=1e-10)


@pytest.mark.parametrize("tau", [4.0, 5.0])
def test_q2_mirror_has_no_nontrivial_root_below_six(tau):
    """Test that 2x^2 + (2 - tau)x + 2 has no real root for tau < 6."""
    assert nontrivial(solve_q2_mirror(theta_from_tau(tau, 2))) == []


def test_q3_mirror_counts(expected_values):
    """Test the counts 1, 2, 2, 3 (x = 1 included) at tau = 4, tau_c, 5, 6."""
    for tau, count in expected_values["q3_mirror_counts"]["cases"]:
        assert len(solve_q3_mirror(theta_from_tau(tau, 2))) == count, tau


def test_q3_mirror_words_are_mirror(params_k2_tau8):
    """Test the shape (1, x, x) of the 3-periodic mirror words."""
    for solution in nontrivial(solve_q3_mirror(params_k2_tau8)):
        assert solution.word[1] == solution.word[2]
        assert solution.branch == Branch.MIRROR
        assert solution.system_residual < 1e-9


def test_q4_mirror_matches_closed_forms_at_tau_5(expected_values):
    """Test the two 4-periodic mirror solutions at tau = 5."""
    solutions = solve_q4_mirror(theta_from_tau(5.0, 2))
    assert len(nontrivial(solutions)) == 2
    exact = sorted(x for x in q4_mirror_closed_forms(5.0) if x is not None)
    assert _sorted_values(solutions, 1) == pytest.approx(exact, abs=1e-10)
    assert exact == pytest.approx(sorted(expected_values["q4_mirror"]["tau_5"]), abs=1e-12)


def test_q4_mirror_matches_closed_forms_at_tau_8(expected_values):
    """Test the four 4-periodic mirror solutions at tau = 8."""
    solutions = solve_q4_mirror(theta_from_tau(8.0, 2))
    exact = sorted(q4_mirror_closed_forms(8.0))
    assert _sorted_values(solutions, 1) == pytest.approx(exact, abs=1e-10)
    assert exact == pytest.approx(sorted(expected_values["q4_mirror"]["tau_8"]), abs=1e-12)


def test_q4_mirror_counts(expected_values):
    """Test the counts 2, 3, 4 on either side of and at 2(1 + sqrt 5)."""
    for tau, count in expected_values["q4_mirror"]["counts"]:
        assert len(nontrivial(solve_q4_mirror(theta_from_tau(tau, 2)))) == count, tau


def test_q4_mirror_closed_form_domains():
    """Test that x1, x2 need tau >= 4 and x3, x4 need tau >= 2(1 + sqrt 5)."""
    assert q4_mirror_closed_forms(3.5) == [None, None, None, None]
    below = q4_mirror_closed_forms(5.0)
    assert below[0] is not None and below[1] is not None
    assert below[2] is None and below[3] is None
    assert all(x is not None for x in q4_mirror_closed_forms(8.0))


def test_q4_mirror_middle_value_positive():
    """Test that g(x1(tau)) > 0 over tau in [4, 10]."""
    for tau in np.linspace(4.0, 10.0, 100):
        x1 = q4_mirror_closed_forms(float(tau))[0]
        assert g_value(2, float(tau), x1) > 0.0


def test_q5_mirror_seven_fixed_points(params_k2_tau8):
    """Test that phi has seven fixed points at tau = 8, all with g(x) > 0."""
    p, lo, hi = q5_mirror_family(2, 8.0)
    roots = isolate_positive_roots(p, lo, hi).roots
    assert len(roots) == 7
    assert all(0.12 < x < 3.87 for x in roots)
    assert all(g_value(2, 8.0, x) > 0.0 for x in roots)
    assert any(abs(x - 1.0) < 1e-10 for x in roots)
    assert len(nontrivial(solve_q5_mirror(params_k2_tau8))) == 6


def test_q3_nonmirror_roots_at_tau_6(expected_values):
    """Test the words (1, 1, x) and (1, x, 1) with x = 2 +- sqrt 2."""
    data = expected_values["q3_nonmirror"]
    params = theta_from_tau(data["tau"], data["k"])
    solutions = nontrivial(solve_q3_nonmirror(params))
    values = sorted({round(next(v for v in s.word if abs(v - 1.0) > 1e-9), 12) for s in solutions})
    assert values == pytest.approx(data["roots"], abs=1e-10)
    assert len(solutions) == 4
    assert sorted(q3_nonmirror_closed_forms(6.0)) == pytest.approx(data["roots"], abs=1e-12)
    assert len(nontrivial(dedup(solve_q3_nonmirror(params)))) == 2
    assert all(s.branch == Branch.NON_MIRROR for s in solutions)
    assert all(s.exhaustive for s in solutions)


def test_q3_nonmirror_empty_below_critical_value():
    """Test that no 3-periodic non-mirror word exists below 2(1 + sqrt 2) for k = 2."""
    assert nontrivial(solve_q3_nonmirror(theta_from_tau(4.5, 2))) == []


def test_q4_nonmirror_roots_at_tau_6(expected_values):
    """Test the words (1, y, y, 1) and (1, 1, y, y) with y = 2 +- sqrt 3."""
    data = expected_values["q4_nonmirror"]
    params = theta_from_tau(data["tau"], data["k"])
    solutions = nontrivial(solve_q4_nonmirror(params))
    values = sorted({round(next(v for v in s.word if abs(v - 1.0) > 1e-9), 12) for s in solutions})
    assert values == pytest.approx(data["roots"], abs=1e-10)
    assert sorted(q4_nonmirror_closed_forms(6.0)) == pytest.approx(data["roots"], abs=1e-12)
    assert len(nontrivial(dedup(solve_q4_nonmirror(params)))) == 2
    # reciprocal pair
    assert values[0] * values[1] == pytest.approx(1.0, abs=1e-10)


def test_q4_nonmirror_empty_below_tau_1():
    """Test that no 4-periodic non-mirror word exists for tau < 4 at k = 2."""
    assert nontrivial(solve_q4_nonmirror(theta_from_tau(3.8, 2))) == []
    assert q4_nonmirror_closed_forms(3.8) == []


def test_zeta_polynomial_is_deflated_closure():
    """Test that removing x = 1 from the 5-periodic non-mirror closure leaves the sextic."""
    for tau in (5.0, 8.0, 11.5):
        p, _, _ = q5_nonmirror_family(2, tau)
        deflated = -deflate_by_root(p, 1.0)
        zeta = zeta_polynomial(tau)
        assert deflated.coef == pytest.approx(zeta.coef, rel=1e-9, abs=1e-9)


def test_q5_nonmirror_six_solutions(params_k2_tau8):
    """Test the six 5-periodic non-mirror words at tau = 8."""
    zeta = zeta_polynomial(8.0)
    roots = isolate_positive_roots(zeta, 2.0 / 8.0, 8.0)
    assert roots.count == 6
    assert roots.count <= roots.descartes_bound <= 6
    solutions = nontrivial(solve_q5_nonmirror(params_k2_tau8))
    assert len(solutions) == 6
    for solution in solutions:
        word = solution.word
        assert word[3] == 1.0 and word[1] == word[2] > 0.0
        assert closure_residual(word, params_k2_tau8) < 1e-9


def test_type_up_words_alternate_ones():
    """Test the shape (1, y, 1, x) of the alternating words for k = 3."""
    params = theta_from_tau(3.5, 3)
    solutions = nontrivial(solve_q4_type_up(params))
    assert solutions
    for solution in solutions:
        assert solution.word[2] == 1.0
        assert solution.system_residual < 1e-9


def test_type_up_class_counts_k3(expected_values):
    """Test the class counts of the alternating branch around its first transition."""
    for tau, count in expected_values["type_up_k3"]["classes"]:
        assert len(dedup(solve_q4_type_up(theta_from_tau(tau, 3)))) == count, tau


def test_solve_collects_every_branch(params_k2_tau8):
    """Test that solve gathers all branches of one period."""
    raw = solve(params_k2_tau8, 4)
    families = {s.family for s in raw}
    assert families == {"q4_mirror", "q4_nonmirror", "q4_type_up"}
    assert all(closure_residual(s.word, params_k2_tau8) < 1e-9 for s in raw)


def test_non_exhaustive_branches_are_tagged():
    """Test that k >= 3 four-periodic non-mirror results make no completeness claim."""
    params = theta_from_tau(3.5, 3)
    assert not get_solver("q4_nonmirror").is_exhaustive(params)
    assert get_solver("q4_nonmirror").is_exhaustive(theta_from_tau(5.0, 2))
    assert get_solver("q3_nonmirror").is_exhaustive(theta_from_tau(5.0, 4))
    assert not get_solver("q3_nonmirror").is_exhaustive(theta_from_tau(5.0, 5))


@pytest.mark.parametrize("q_max", [0, 13])
def test_numeric_search_rejects_period_range(params_k2_tau5, q_max):
    """Test the 1..12 range of the numeric search."""
    with pytest.raises(ConstraintViolation):
        search_periodic_numeric(params_k2_tau5, q_max)


@pytest.mark.slow
def test_numeric_search_results_close(params_k2_tau8):
    """Test that everything the numeric search accepts closes and is tagged experimental."""
    found = search_periodic_numeric(params_k2_tau8, 3, grid=80)
    assert any(s.minimal_period == 1 for s in found)
    for solution in found:
        assert solution.experimental
        assert not solution.exhaustive
        assert closure_residual(solution.word, params_k2_tau8) < 1e-9


def test_g_value_at_one():
    """Test g(1) = 1 for every tau."""
    for tau in (3.0, 5.0, 8.0):
        assert g_value(2, tau, 1.0) == pytest.approx(1.0, abs=1e-12)
        assert g_value(3, tau, 1.0) == pytest.approx(1.0, abs=1e-12)
    assert math.isfinite(g_value(2, 8.0, 3.0))


@pytest.mark.parametrize("tau", [5.0, 8.0])
@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_solutions_close_after_one_period(tau, q):
    """Test that forward iteration of every word reproduces it and returns to (u_-1, 1)."""
    params = theta_from_tau(tau, 2)
    for solution in nontrivial(solve(params, q)):
        word = solution.word
        traj = generate(word[-1], word[1], q, params)
        assert traj.truncated_at is None
        assert traj.values[1 : q + 1] == pytest.approx(word, abs=1e-7)
        assert traj.values[q] == pytest.approx(word[-1], abs=1e-7)
        assert traj.values[q + 1] == pytest.approx(1.0, abs=1e-7)


def _matched(exact_words, numeric_words, tol=1e-8):
    return all(
        any(len(w) == len(e) and np.allclose(e, w, rtol=0.0, atol=tol) for w in numeric_words)
        for e in exact_words
    )


@pytest.mark.slow
def test_numeric_search_finds_four_periodic_mirror_words(params_k2_tau5):
    """Test that the search at tau = 5 recovers the closed-form q = 4 mirror classes and nothing near 1."""
    found = search_periodic_numeric(params_k2_tau5, 4)
    for solution in nontrivial(found):
        assert minimal_period(solution.word, 1e-3) == solution.q
    exact = [s.word for s in nontrivial(dedup(solve_q4_mirror(params_k2_tau5)))]
    assert len(exact) == 2
    assert _matched(exact, [s.word for s in found])


@pytest.mark.slow
def test_numeric_search_finds_five_periodic_words(params_k2_tau8):
    """Test that the search at tau = 8 recovers every 5-periodic class of the polynomial solvers."""
    found = search_periodic_numeric(params_k2_tau8, 5)
    exact = nontrivial(dedup(solve_q5_mirror(params_k2_tau8) + solve_q5_nonmirror(params_k2_tau8)))
    assert exact
    assert _matched([s.word for s in exact], [s.word for s in found])


@pytest.mark.slow
def test_numeric_search_below_thresholds_finds_only_constant_law():
    """Test that nothing but the constant class exists up to q = 5 at k = 2, tau = 3."""
    found = search_periodic_numeric(theta_from_tau(3.0, 2), 5, grid=400)
    assert [s.q for s in found] == [1]


@pytest.mark.slow
def test_q4_nonmirror_at_degenerate_threshold_has_no_near_trivial_words():
    """Test that the double root y = 1 at k = 3, tau = 3 leaves no words next to the constant one."""
    params = theta_from_tau(3.0, 3)
    solutions = nontrivial(solve_q4_nonmirror(params))
    for solution in solutions:
        assert minimal_period(solution.word, 1e-3) == 4
        assert solution.system_residual < 1e-9
    classes = nontrivial(dedup(solutions))
    for first, second in combinations(classes, 2):
        assert not np.allclose(first.word, second.word, rtol=0.0, atol=1e-3)
    assert len(classes) < 10
