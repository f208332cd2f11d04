"""Property checks shared by the hypothesis suite and the acceptance run.

Each ``check_*`` raises AssertionError with a description on failure.
Generators take a ``random.Random`` so the acceptance run is reproducible.
"""
import random

from pordering.core import (
    Ballot,
    ElectionProfile,
    MarginMatrix,
    margin_matrix,
    promote,
    random_margin_matrix,
    validate_margins,
)
from pordering.norms import PExponent, negative_mass
from pordering.solvers import (
    find_condorcet_loser,
    find_condorcet_winner,
    kemeny,
    limit_ordering,
    p_ordering_solve,
    ranked_pairs,
)


def _swap(ordering, k):
    s = list(ordering)
    s[k], s[k + 1] = s[k + 1], s[k]
    return tuple(s)


def check_swapping(matrix, ordering, p):
    """Swapping an adjacent pair whose later member wins strictly lowers the norm."""
    p = PExponent.parse(p)
    base = negative_mass(matrix, ordering, p)
    swaps = 0
    for k in range(len(ordering) - 1):
        a, c = ordering[k], ordering[k + 1]
        if matrix[c, a] > 0:
            swaps += 1
            after = negative_mass(matrix, _swap(ordering, k), p)
            assert after < base, f"swap {a},{c} in {ordering} at p={p}: {after} !< {base}"
    return swaps


def check_superdiagonal(matrix, p):
    for ordering in p_ordering_solve(matrix, p).optima:
        for a, b in zip(ordering, ordering[1:]):
            assert matrix[a, b] > 0, f"{ordering} has {a} losing to {b} at p={p}"


def check_condorcet(matrix, p):
    winner, loser = find_condorcet_winner(matrix), find_condorcet_loser(matrix)
    sol = p_ordering_solve(matrix, p)
    results = {
        "p-ordering": sol.optima,
        "ranked-pairs": [ranked_pairs(matrix)],
        "kemeny": [kemeny(matrix)],
        "limit": [limit_ordering(matrix)],
    }
    for name, orderings in results.items():
        for ordering in orderings:
            if winner is not None:
                assert ordering[0] == winner, f"{name} puts Condorcet winner {winner} at {ordering}"
            if loser is not None and name in ("p-ordering", "ranked-pairs"):
                assert ordering[-1] == loser, f"{name} puts Condorcet loser {loser} at {ordering}"
    return winner is not None or loser is not None


def check_reversal(matrix, p):
    sol, rev = p_ordering_solve(matrix, p), p_ordering_solve(-matrix, p)
    assert set(rev.optima) == {o[::-1] for o in sol.optima}
    if sol.unique:
        assert rev.unique and rev.ordering == sol.ordering[::-1]
    return sol.unique


def check_removal(matrix, p):
    sol = p_ordering_solve(matrix, p)
    if not sol.unique:
        return False
    ordering = sol.ordering
    for dropped in (ordering[0], ordering[-1]):
        sub = matrix.without(dropped)
        keep = [c for c in range(matrix.n) if c != dropped]
        relabel = {c: k for k, c in enumerate(keep)}
        expected = tuple(relabel[c] for c in ordering if c != dropped)
        got = p_ordering_solve(sub, p)
        assert got.optima == (expected,), f"removing {dropped} from {ordering}: got {got.optima}"
    return True


def check_monotonicity(profile, p, ballot_index, candidate, steps):
    """Promoting one voter's ranking of ``candidate`` never pushes it down.

    Returns False (vacuous) when either election has tied margins or more
    than one optimal ordering.
    """
    before_m = margin_matrix(profile)
    after_m = margin_matrix(promote(profile, ballot_index, candidate, steps))
    if not (validate_margins(before_m).ok and validate_margins(after_m).ok):
        return False
    before, after = p_ordering_solve(before_m, p), p_ordering_solve(after_m, p)
    if not (before.unique and after.unique):
        return False
    old, new = before.ordering.index(candidate), after.ordering.index(candidate)
    assert new <= old, f"candidate {candidate} fell from {old} to {new} at p={p}"
    return True


def check_acyclic(matrix, ps=(1, 2, 3, 7, "0.5", "2.5")):
    target = ranked_pairs(matrix)
    for p in ps:
        sol = p_ordering_solve(matrix, p)
        assert sol.optima == (target,), f"p={p}: {sol.optima} vs {target}"
        assert sol.objective == 0
    assert kemeny(matrix) == target == limit_ordering(matrix)


# --------------------------------------------------------------------------
# Instance generators


def random_matrix(rng: random.Random, lo=3, hi=6) -> MarginMatrix:
    return random_margin_matrix(rng, rng.randint(lo, hi))


def random_ordering(rng: random.Random, n):
    perm = list(range(n))
    rng.shuffle(perm)
    return tuple(perm)


def _reorient(matrix, beats):
    """Same magnitudes, with signs chosen by ``beats(i, j) -> bool | None``."""
    upper = {}
    for i, j, v in matrix.upper():
        wins = beats(i, j)
        upper[(i, j)] = v if wins is None else (abs(v) if wins else -abs(v))
    return MarginMatrix.from_upper(matrix.candidates, upper)


def planted_condorcet(rng: random.Random, lo=3, hi=6) -> MarginMatrix:
    """A random matrix with a planted Condorcet winner and/or loser."""
    matrix = random_matrix(rng, lo, hi)
    n = matrix.n
    winner, loser = rng.sample(range(n), 2)
    mode = rng.choice(("winner", "loser", "both"))

    def beats(i, j):
        for c, top in ((winner, True), (loser, False)):
            if mode == ("loser" if top else "winner"):
                continue
            if i == c:
                return top
            if j == c:
                return not top
        return None

    return _reorient(matrix, beats)


def random_acyclic(rng: random.Random, lo=3, hi=6) -> MarginMatrix:
    matrix = random_matrix(rng, lo, hi)
    rank = {c: k for k, c in enumerate(random_ordering(rng, matrix.n))}
    return _reorient(matrix, lambda i, j: rank[i] < rank[j])


def random_ballots(rng: random.Random, lo=3, hi=6) -> ElectionProfile:
    """Random weighted profile whose margins are distinct and nonzero."""
    while True:
        n = rng.randint(lo, hi)
        names = tuple("ABCDEFGH"[:n])
        ballots = [Ballot(random_ordering(rng, n), rng.randint(1, 30)) for _ in range(rng.randint(n, 3 * n))]
        profile = ElectionProfile(names, tuple(ballots))
        if validate_margins(margin_matrix(profile)).ok:
            return profile


def random_promotion(rng: random.Random, profile: ElectionProfile):
    """(ballot_index, candidate, steps) for a promotion that moves someone up."""
    k = rng.randrange(len(profile.ballots))
    ranking = profile.ballots[k].ranking
    pos = rng.randrange(1, len(ranking))
    return k, ranking[pos], rng.randint(1, pos)
