import random

import pytest
from hypothesis import strategies as st

from pordering.core import MarginMatrix, default_names, random_margin_matrix


@st.composite
def valid_matrices(draw, min_n=3, max_n=6, max_magnitude=50):
    """Tournaments whose pairwise magnitudes are distinct and nonzero."""
    n = draw(st.integers(min_n, max_n))
    k = n * (n - 1) // 2
    mags = draw(st.lists(st.integers(1, max_magnitude), min_size=k, max_size=k, unique=True))
    signs = draw(st.lists(st.sampled_from([1, -1]), min_size=k, max_size=k))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    upper = {ij: s * v for ij, s, v in zip(pairs, signs, mags)}
    return MarginMatrix.from_upper(default_names(n), upper)


@st.composite
def rankings(draw, n):
    return tuple(draw(st.permutations(range(n))))


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture
def random_matrices(rng):
    return [random_margin_matrix(rng, rng.randint(3, 6)) for _ in range(60)]


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(line)
