import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from amphimap.map_core import MINUS, PLUS, SignedMap, random_map

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def small_maps(draw, max_edges=8, min_edges=1):
    n = draw(st.integers(min_edges, max_edges))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_map(n, random.Random(seed))


@st.composite
def signed_maps(draw, max_edges=6, min_edges=1):
    m = draw(small_maps(max_edges, min_edges))
    signs = draw(st.lists(st.sampled_from([PLUS, MINUS]), min_size=m.ne, max_size=m.ne))
    return SignedMap(m, tuple(signs))


@pytest.fixture
def rng():
    return random.Random(20261015)


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[key])
