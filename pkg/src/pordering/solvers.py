"""Ranked Pairs, Kemeny-Young and exact p-orderings.

The three routes are implemented independently of each other:

* ``ranked_pairs`` locks pairs in decreasing margin order on a directed graph;
* ``kemeny`` is a dynamic program over candidate subsets (p = 1 only);
* ``p_ordering`` is a branch-and-bound over Hamiltonian orderings, i.e.
  those in which every candidate beats the one placed directly after it;
* ``limit_ordering`` picks the lexicographically best sign pattern by
  enumeration, without any exponentiation.
"""
from __future__ import annotations

import heapq
from collections.abc import Iterator
from dataclasses import dataclass, field

from .core import MarginMatrix, Ordering, require_valid
from .norms import FLOAT_TIE_RTOL, PExponent, magnitude_power

DEFAULT_MAX_CANDIDATES = 10


class SizeCapError(RuntimeError):
    """Raised when an exact search is requested for too many candidates."""


def _check_size(matrix: MarginMatrix, max_candidates: int | None) -> None:
    cap = DEFAULT_MAX_CANDIDATES if max_candidates is None else max_candidates
    if matrix.n > cap:
        raise SizeCapError(f"{matrix.n} candidates exceeds the exact-search cap of {cap}")


@dataclass(frozen=True)
class Solution:
    """Result of an exact search.

    ``ordering`` is the lexicographically least optimum; ``optima`` lists all
    of them. ``objective`` is method specific (Q-sum for Kemeny, the mass of
    the negative entries for p-orderings).
    """

    ordering: Ordering
    optima: tuple[Ordering, ...]
    objective: int | float
    exact: bool = True
    outside_guarantees: bool = False

    @property
    def multiplicity(self) -> int:
        return len(self.optima)

    @property
    def unique(self) -> bool:
        return len(self.optima) == 1


# --------------------------------------------------------------------------
# Ranked Pairs


@dataclass
class LockedGraph:
    n: int
    edges: list[tuple[int, int]] = field(default_factory=list)
    discarded: list[tuple[int, int]] = field(default_factory=list)
    _succ: list[set[int]] = field(init=False, repr=False)

    def __post_init__(self):
        self._succ = [set() for _ in range(self.n)]

    def reaches(self, src: int, dst: int) -> bool:
        stack, seen = [src], {src}
        while stack:
            v = stack.pop()
            if v == dst:
                return True
            for w in self._succ[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return False

    def offer(self, winner: int, loser: int) -> bool:
        """Lock winner->loser unless that would close a cycle."""
        if self.reaches(loser, winner):
            self.discarded.append((winner, loser))
            return False
        self._succ[winner].add(loser)
        self.edges.append((winner, loser))
        return True

    def topological_order(self) -> Ordering:
        # Lowest index first among sources; only matters when the order is partial.
        indegree = [0] * self.n
        for _, w in self.edges:
            indegree[w] += 1
        heap = [v for v in range(self.n) if indegree[v] == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            v = heapq.heappop(heap)
            order.append(v)
            for w in self._succ[v]:
                indegree[w] -= 1
                if indegree[w] == 0:
                    heapq.heappush(heap, w)
        return tuple(order)


def pairs_by_strength(matrix: MarginMatrix) -> list[tuple[int, int, int]]:
    """(winner, loser, margin) in decreasing margin; ties by candidate pair."""
    out = []
    for i, j, v in matrix.upper():
        if v > 0:
            out.append((i, j, v, (i, j)))
        elif v < 0:
            out.append((j, i, -v, (i, j)))
    out.sort(key=lambda t: (-t[2], t[3]))
    return [t[:3] for t in out]


def ranked_pairs_graph(matrix: MarginMatrix, allow_ties: bool = False) -> LockedGraph:
    require_valid(matrix, allow_ties)
    graph = LockedGraph(matrix.n)
    for winner, loser, _ in pairs_by_strength(matrix):
        graph.offer(winner, loser)
    return graph


def ranked_pairs(matrix: MarginMatrix, allow_ties: bool = False) -> Ordering:
    return ranked_pairs_graph(matrix, allow_ties).topological_order()


# --------------------------------------------------------------------------
# Hamiltonian orderings


def hamiltonian_orderings(matrix: MarginMatrix, strict: bool = True) -> Iterator[Ordering]:
    """Orderings in which each candidate beats the next one head-to-head.

    Yielded in lexicographic order. With ``strict=False`` a zero margin also
    counts as "beats", which keeps the set nonempty for tied matrices.
    """
    n, m = matrix.n, matrix.m
    if n == 0:
        return
    path: list[int] = []
    used = [False] * n

    def extend():
        if len(path) == n:
            yield tuple(path)
            return
        last = path[-1] if path else None
        for c in range(n):
            if used[c]:
                continue
            if last is not None and not (m[last][c] > 0 or (not strict and m[last][c] == 0)):
                continue
            used[c] = True
            path.append(c)
            yield from extend()
            path.pop()
            used[c] = False

    yield from extend()


# --------------------------------------------------------------------------
# Kemeny-Young


def kemeny_solve(
    matrix: MarginMatrix,
    allow_ties: bool = False,
    max_candidates: int | None = None,
) -> Solution:
    """Maximise the sum of margins agreeing with the ordering.

    ``best[S]`` is the best internal score of any ordering of the subset S,
    built by choosing which member of S goes first.
    """
    verdict = require_valid(matrix, allow_ties)
    _check_size(matrix, max_candidates)
    n, m = matrix.n, matrix.m
    full = (1 << n) - 1
    best = [0] * (1 << n)
    for subset in range(1, full + 1):
        score = None
        members = [c for c in range(n) if subset >> c & 1]
        for c in members:
            rest = subset & ~(1 << c)
            value = best[rest] + sum(m[c][r] for r in members if r != c)
            if score is None or value > score:
                score = value
        best[subset] = score

    def expand(subset: int) -> Iterator[tuple[int, ...]]:
        if subset == 0:
            yield ()
            return
        members = [c for c in range(n) if subset >> c & 1]
        for c in members:
            rest = subset & ~(1 << c)
            if best[rest] + sum(m[c][r] for r in members if r != c) == best[subset]:
                for tail in expand(rest):
                    yield (c,) + tail

    optima = tuple(expand(full))
    return Solution(optima[0], optima, best[full], outside_guarantees=not verdict.ok)


def kemeny(matrix: MarginMatrix, allow_ties: bool = False, max_candidates: int | None = None) -> Ordering:
    return kemeny_solve(matrix, allow_ties, max_candidates).ordering


# --------------------------------------------------------------------------
# p-ordering


def p_ordering_solve(
    matrix: MarginMatrix,
    p,
    allow_ties: bool = False,
    max_candidates: int | None = None,
) -> Solution:
    """All orderings minimising the p-norm of the margins that go against them.

    Candidates are appended one at a time. Once a candidate is placed, its
    pairs with every candidate still unplaced are fixed (it comes first), so
    the mass of negative entries touching placed candidates is a lower bound
    that only grows; a branch is dropped once that bound exceeds the best
    complete ordering found so far. Only Hamiltonian extensions are explored,
    since an adjacent pair in the wrong order can always be swapped to lower
    the norm.
    """
    verdict = require_valid(matrix, allow_ties)
    _check_size(matrix, max_candidates)
    p = PExponent.parse(p)
    n, m = matrix.n, matrix.m
    exact = p.is_integer

    weight = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if m[i][j] < 0:
                weight[i][j] = magnitude_power(m[i][j], p)

    best: list = [None]
    found: list[tuple[int | float, Ordering]] = []
    path: list[int] = []
    unplaced = set(range(n))

    def worse(bound) -> bool:
        incumbent = best[0]
        if incumbent is None:
            return False
        return bound > (incumbent if exact else incumbent * (1 + FLOAT_TIE_RTOL))

    def search(bound):
        if not unplaced:
            if exact and best[0] is not None and bound < best[0]:
                found.clear()
            if best[0] is None or bound < best[0]:
                best[0] = bound
            found.append((bound, tuple(path)))
            return
        last = path[-1] if path else None
        children = []
        for c in sorted(unplaced):
            if last is not None and m[last][c] < 0:
                continue
            added = sum(weight[c][u] for u in unplaced if u != c)
            children.append((added, c))
        children.sort()
        for added, c in children:
            if worse(bound + added):
                continue
            unplaced.discard(c)
            path.append(c)
            search(bound + added)
            path.pop()
            unplaced.add(c)

    search(0 if exact else 0.0)
    final = best[0]
    limit = final if exact else final * (1 + FLOAT_TIE_RTOL)
    optima = tuple(sorted({o for bound, o in found if bound <= limit}))
    return Solution(optima[0], optima, final, exact=exact, outside_guarantees=not verdict.ok)


def p_ordering(matrix: MarginMatrix, p, allow_ties: bool = False, max_candidates: int | None = None) -> Ordering:
    return p_ordering_solve(matrix, p, allow_ties, max_candidates).ordering


# --------------------------------------------------------------------------
# p -> infinity


def sign_vector(matrix: MarginMatrix, ordering: Ordering) -> tuple[int, ...]:
    """Signs of the pairwise margins under ``ordering``, strongest margin first."""
    position = {c: k for k, c in enumerate(ordering)}
    signs = []
    for winner, loser, _ in pairs_by_strength(matrix):
        signs.append(1 if position[winner] < position[loser] else -1)
    return tuple(signs)


def limit_ordering(matrix: MarginMatrix, allow_ties: bool = False, max_candidates: int | None = None) -> Ordering:
    """The ordering whose sign vector is lexicographically greatest."""
    require_valid(matrix, allow_ties)
    _check_size(matrix, max_candidates)
    best_key, best = None, None
    for ordering in hamiltonian_orderings(matrix, strict=not allow_ties):
        key = sign_vector(matrix, ordering)
        if best_key is None or key > best_key:
            best_key, best = key, ordering
    return best


# --------------------------------------------------------------------------
# Condorcet


def find_condorcet_winner(matrix: MarginMatrix) -> int | None:
    for c in range(matrix.n):
        if all(matrix.m[c][d] > 0 for d in range(matrix.n) if d != c):
            return c
    return None


def find_condorcet_loser(matrix: MarginMatrix) -> int | None:
    for c in range(matrix.n):
        if all(matrix.m[c][d] < 0 for d in range(matrix.n) if d != c):
            return c
    return None
