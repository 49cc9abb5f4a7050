import random
from itertools import combinations

import pytest
from hypothesis import strategies as st

from coturan.hypercore import Hypergraph


def random_hypergraph(rng: random.Random, n: int, r: int, p: float) -> Hypergraph:
    return Hypergraph(r, n, tuple(e for e in combinations(range(n), r) if rng.random() < p))


@st.composite
def hypergraphs(draw, max_n=9, rs=(2, 3, 4)):
    r = draw(st.sampled_from(rs))
    n = draw(st.integers(r, max_n))
    all_sets = list(combinations(range(n), r))
    picks = draw(st.lists(st.booleans(), min_size=len(all_sets), max_size=len(all_sets)))
    return Hypergraph(r, n, tuple(e for e, keep in zip(all_sets, picks) if keep))


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
