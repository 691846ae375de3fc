import pytest
from hypothesis import strategies as st

from orientcol.digraph import OrientedGraph
from orientcol.paley import paley_tournament
from orientcol.patterns import load_pattern_catalog

# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def qr7():
    return paley_tournament(7).graph


@pytest.fixture(scope="session")
def catalog():
    return load_pattern_catalog()


@st.composite
def oriented_graphs(draw, min_order=0, max_order=8):
    n = draw(st.integers(min_order, max_order))
    arcs = []
    for u in range(n):
        for v in range(u + 1, n):
            kind = draw(st.integers(0, 2))
            if kind == 1:
                arcs.append((u, v))
            elif kind == 2:
                arcs.append((v, u))
    return OrientedGraph(n, arcs)


@st.composite
def graphs_with_perm(draw, max_order=7):
    g = draw(oriented_graphs(max_order=max_order))
    perm = draw(st.permutations(list(range(g.order))))
    return g, list(perm)
