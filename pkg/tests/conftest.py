import json
from pathlib import Path

import pytest

from sosggm.boundary_law import from_word
from sosggm.config import get_settings
from sosggm.models import BoundaryLaw
from sosggm.params import theta_from_tau
from sosggm.periodic_systems import solve_q4_mirror

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(autouse=True)
def fresh_settings():
    """
    Autouse fixture that drops the cached settings around every test.
    Tests that patch SOSGGM_* environment variables see their values.
    """
    get_settings.cache_clear()
    yield get_settings()
    get_settings.cache_clear()


@pytest.fixture(scope="session")
def expected_values():
    """Reference values shared by the solver tests."""
    with open(FIXTURES / "expected_values.json", encoding="utf-8") as fh:
        return json.load(fh)


@pytest.fixture
def params_k2_tau5():
    return theta_from_tau(5.0, 2)


@pytest.fixture
def params_k2_tau8():
    return theta_from_tau(8.0, 2)


@pytest.fixture
def q4_mirror_law(params_k2_tau5):
    """Boundary law of the 4-periodic mirror word with the smaller root at k = 2, tau = 5."""
    solutions = [s for s in solve_q4_mirror(params_k2_tau5) if s.minimal_period > 1]
    smallest = min(solutions, key=lambda s: s.word[1])
    return from_word(smallest)


@pytest.fixture
def trivial_law(params_k2_tau5):
    return BoundaryLaw(z=[1.0], q=1, params=params_k2_tau5)
