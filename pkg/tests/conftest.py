import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from bspaths import BSParams, PathL

settings.register_profile(
    "default", deadline=None, max_examples=150, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

GRID = [
    BSParams.of(3, 2),
    BSParams.of(2, 2),
    BSParams.of(1, 1),
    BSParams.of(1, 2),
    BSParams.of(2, 3),
    BSParams.of(1, 1, True),
    BSParams.of(2, 2, True),
]


def params_strategy(max_c=4, max_d=4, negative=None):
    neg = st.booleans() if negative is None else st.just(negative)
    return st.builds(BSParams.of, st.integers(1, max_c), st.integers(1, max_d), neg)


@st.composite
def paths(draw, params, max_letters=4, max_tail=8):
    letters = tuple(draw(st.lists(st.integers(0, params.d - 1), max_size=max_letters)))
    lo = -max_tail if (params.negative and letters) else 0
    return PathL(params, letters, draw(st.integers(lo, max_tail)))


@st.composite
def params_and_paths(draw, n=1, **kw):
    p = draw(params_strategy())
    return (p,) + tuple(draw(paths(p, **kw)) for _ in range(n))


# acceptance lines collected for the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance_lines():
    return ACCEPTANCE_LINES
