import itertools
import math

import pytest
from hypothesis import given, settings

from conftest import valid_matrices
from oracles import best_orderings
from pordering.convergence import (
    cdp_holds,
    cdp_threshold,
    check_theorem,
    convergence_profile,
    p_star_bound,
)
from pordering.core import E3, E4A, E4B, MarginMatrix
from pordering.solvers import ranked_pairs


def dominance_by_hand(mags, p):
    """Each magnitude's p-th power against the sum over strictly smaller ones."""
    return all(m**p > sum(k**p for k in mags if k < m) for m in mags)


@pytest.mark.parametrize("p, expected", [(3, False), (4, True)])
def test_cdp_holds_e4b(p, expected):
    assert cdp_holds(E4B, p) is expected
    assert dominance_by_hand(E4B.magnitudes(), p) is expected


def test_cdp_holds_e4b_numbers():
    assert 6**3 == 216 < 5**3 + 4**3 + 3**3 + 2**3 + 1 == 225
    assert 6**4 == 1296 > 5**4 + 4**4 + 3**4 + 2**4 + 1 == 979


def test_cdp_single_margin():
    assert cdp_holds(MarginMatrix.from_pairs("AB", {("A", "B"): 5}), 1)


@pytest.mark.parametrize("matrix, expected", [(E4B, 4), (E3, 2), (E4A, 3)])
def test_cdp_threshold(matrix, expected):
    assert cdp_threshold(matrix) == expected
    first = next(p for p in itertools.count(1) if dominance_by_hand(matrix.magnitudes(), p))
    assert first == expected


def test_p_star_bound():
    assert p_star_bound(E4B) == pytest.approx(math.log(6) / math.log(6 / 5), rel=1e-12)
    assert p_star_bound(E3) == pytest.approx(math.log(3) / math.log(3 / 2), rel=1e-12)
    assert p_star_bound(E3) == pytest.approx(2.7095, abs=1e-4)
    assert p_star_bound(MarginMatrix.from_pairs("AB", {("A", "B"): 5})) == 1.0


def test_illustrative_ratio_check():
    assert (6 / 5) ** 9 > 5
    assert (6 / 5) ** 8 < 5
    # so six copies of 5**p are beaten by 6**p from p = 9 on, in exact arithmetic too
    assert 6**9 > 5 * 5**9 and 6**8 < 5 * 5**8


@settings(max_examples=200, deadline=None)
@given(valid_matrices())
def test_bound_is_sound(matrix):
    bound = math.ceil(p_star_bound(matrix))
    assert cdp_holds(matrix, bound)
    threshold = cdp_threshold(matrix)
    assert threshold <= bound
    # once dominance holds it keeps holding
    for p in (threshold, threshold + 1, threshold + 5, 2 * threshold + 3):
        assert cdp_holds(matrix, p)


@settings(max_examples=100, deadline=None)
@given(valid_matrices(max_n=5, max_magnitude=20))
def test_theorem_against_exhaustive_search(matrix):
    threshold = cdp_threshold(matrix)
    for p in (threshold, threshold + 1, threshold + 7):
        _, argmax = best_orderings(matrix.m, p)
        assert argmax == [ranked_pairs(matrix)]


@settings(max_examples=100, deadline=None)
@given(valid_matrices())
def test_check_theorem(matrix):
    assert check_theorem(matrix).ok


def test_profile_e4b():
    report = convergence_profile(E4B, 12)
    abcd = E4B.ordering_of("ABCD")
    assert [t.ordering for t in report.trace] == [abcd] * 12
    assert all(t.multiplicity == 1 for t in report.trace)
    assert report.agrees and report.stabilized_at == 1 and report.flips == []
    assert report.cdp_threshold == 4
    assert report.trace[0].q == 13


def test_profile_e3():
    report = convergence_profile(E3, 5)
    assert {t.ordering for t in report.trace} == {E3.ordering_of("ACB")}
    assert report.agrees


def test_profile_e4a():
    report = convergence_profile(E4A, 10)
    assert report.agrees
    assert report.cdp_threshold == 3
    assert all(t.ordering == (0, 1, 2, 3) for t in report.trace if t.p >= 3)
    assert report.stabilized_at is not None and report.stabilized_at <= 3


def test_profile_below_threshold_warns():
    with pytest.warns(UserWarning, match="below the dominance threshold"):
        report = convergence_profile(E4B, 2)
    assert not report.agrees
    assert report.notes


def test_profile_threads_match_sequential():
    a = convergence_profile(E4A, 10)
    b = convergence_profile(E4A, 10, threads=4)
    assert a == b


# Kemeny and Ranked Pairs disagree here; orderings below checked by exhaustive search.
SPLIT = MarginMatrix.from_upper(
    "ABCD",
    {(0, 1): 9, (0, 2): 8, (0, 3): -12, (1, 2): -7, (1, 3): 11, (2, 3): 10},
)


def test_profile_records_flips_before_threshold():
    report = convergence_profile(SPLIT, 8)
    names = ["".join(SPLIT.names(t.ordering)) for t in report.trace]
    assert names == ["ACBD", "ACBD"] + ["CBDA"] * 6
    for t in report.trace:
        assert [t.ordering] == best_orderings(SPLIT.m, t.p)[1]
    assert report.flips == [3]
    assert report.stabilized_at == 3
    assert "".join(SPLIT.names(report.ranked_pairs)) == "CBDA"
    assert report.cdp_threshold == 8
    assert report.agrees


def test_split_instance_needs_threshold_for_verdict():
    threshold = cdp_threshold(SPLIT)
    with pytest.warns(UserWarning):
        assert not convergence_profile(SPLIT, threshold - 1).agrees
    assert convergence_profile(SPLIT, threshold + 2).agrees
