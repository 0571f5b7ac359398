import random

import pytest
from hypothesis import strategies as st

from chainpoly.poset import Poset

_RESULTS = []


@st.composite
def posets(draw, max_size=6, min_size=1):
    size = draw(st.integers(min_size, max_size))
    pairs = [(i, j) for i in range(size) for j in range(i + 1, size)]
    picked = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    perm = draw(st.permutations(range(size)))
    return Poset.from_relations(size, [(perm[i], perm[j]) for (i, j), keep in zip(pairs, picked) if keep])


@pytest.fixture
def rng():
    return random.Random(20240917)


class _Criterion:
    def __init__(self, number, title):
        self.number = number
        self.title = title
        self.detail = ""

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        status = "PASS" if exc_type is None else "FAIL"
        _RESULTS.append(f"[{status}] criterion {self.number}: {self.title}" + (f" ({self.detail})" if self.detail else ""))
        return False


@pytest.fixture
def criterion():
    return _Criterion


def pytest_terminal_summary(terminalreporter):
    if _RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in _RESULTS:
            terminalreporter.write_line(line)
