import pytest
from hypothesis import HealthCheck, settings, strategies as st

from knotbound.diagram import parse_pd
from knotbound.moves import random_unknot

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

KINK = "X 0 0 1 1"
TREFOIL = "X 1 5 2 4\nX 3 1 4 0\nX 5 3 0 2"


@pytest.fixture
def kink():
    return parse_pd(KINK)


@pytest.fixture
def trefoil():
    return parse_pd(TREFOIL)


@st.composite
def unknot_diagrams(draw, min_crossings=1, max_crossings=14):
    seed = draw(st.integers(0, 10**6))
    target = draw(st.integers(min_crossings, max_crossings))
    return random_unknot(seed, target)[0]


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
