import os
import sys

import pytest
from hypothesis import HealthCheck, settings, strategies as st

HERE = os.path.dirname(__file__)
sys.path.insert(0, HERE)
sys.path.insert(0, os.path.join(HERE, "..", "tools"))

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

from corpus import corpus, shipped  # noqa: E402
from legconc.diagram import DiagramError, FrontWord, GridDiagram, grid_to_front  # noqa: E402


@st.composite
def grids(draw, min_size=2, max_size=6):
    n = draw(st.integers(min_size, max_size))
    xs = draw(st.permutations(range(1, n + 1)))
    os_ = draw(st.permutations(range(1, n + 1)))
    try:
        return GridDiagram(n, tuple(xs), tuple(os_))
    except DiagramError:
        from hypothesis import assume

        assume(False)


@st.composite
def fronts(draw, max_cusps=3, max_crossings=6, max_strands=6):
    """Random single-component fronts built event by event."""
    from hypothesis import assume

    cusps = draw(st.integers(1, max_cusps))
    crossings = draw(st.integers(0, max_crossings))
    events, m = [], 0
    left_l, left_r, left_x = cusps, cusps, crossings
    while left_l or left_r or left_x:
        kinds = []
        if left_l and m + 2 <= max_strands:
            kinds.append("L")
        if left_r and m >= 2 and (m > 2 or not (left_l or left_x) or left_r > 1 and left_l):
            kinds.append("R")
        if left_x and m >= 2:
            kinds.append("X")
        kinds = [k for k in kinds if not (k == "R" and m == 2 and (left_l or left_x) and left_r == 1)]
        if not kinds:
            assume(False)
        k = draw(st.sampled_from(kinds))
        if k == "L":
            events.append(("L", draw(st.integers(1, m + 1))))
            m, left_l = m + 2, left_l - 1
        elif k == "R":
            events.append(("R", draw(st.integers(1, m - 1))))
            m, left_r = m - 2, left_r - 1
        else:
            events.append(("X", draw(st.integers(1, m - 1))))
            left_x -= 1
        assume(m > 0 or not (left_l or left_r or left_x))
    orient = (draw(st.sampled_from((1, 2))), draw(st.sampled_from((1, -1))))
    try:
        return FrontWord(tuple(events), orient)
    except DiagramError:
        assume(False)


@pytest.fixture(scope="session")
def m946():
    return shipped("m946.front")


@pytest.fixture(scope="session")
def unknot():
    return shipped("unknot.front")


@pytest.fixture(scope="session")
def trefoil():
    return shipped("trefoil.front")


@pytest.fixture(scope="session")
def corpus_fronts():
    return corpus()


@pytest.fixture(scope="session")
def dgas(corpus_fronts):
    """(name, front, dga) for the whole corpus, built once."""
    from legconc.dga import dga_from_front

    return tuple((name, f, dga_from_front(f)) for name, f in corpus_fronts)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.RESULTS):
            terminalreporter.write_line(line)
