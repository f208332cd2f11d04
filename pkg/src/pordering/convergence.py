"""Cumulative dominance of large margins and stabilisation to Ranked Pairs."""
from __future__ import annotations

import math
import warnings
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .core import MarginMatrix, Ordering, require_valid
from .norms import q_sum
from .solvers import limit_ordering, p_ordering_solve, ranked_pairs


def _distinct_magnitudes(matrix: MarginMatrix) -> list[int]:
    return sorted(set(matrix.magnitudes()))


def cdp_holds(matrix: MarginMatrix, p: int) -> bool:
    """Does every |m|**p beat the sum of the p-th powers of all smaller magnitudes?"""
    mags = sorted(matrix.magnitudes())
    smaller = 0
    k = 0
    while k < len(mags):
        value = mags[k] ** p
        if value <= smaller:
            return False
        # equal magnitudes are not "smaller" than each other
        run = k
        while run < len(mags) and mags[run] == mags[k]:
            smaller += value
            run += 1
        k = run
    return True


def p_star_bound(matrix: MarginMatrix) -> float:
    """max over non-minimal magnitudes m of ln(n(n-1)/2) / ln(m/(m-1)).

    Every integer p at or above this value satisfies ``cdp_holds``. With fewer
    than two distinct magnitudes there is nothing to dominate and 1.0 is
    returned.
    """
    mags = _distinct_magnitudes(matrix)
    n = matrix.n
    pairs = n * (n - 1) // 2
    candidates = [m for m in mags[1:] if m > 1]
    if len(mags) < 2 or not candidates:
        return 1.0
    return max(math.log(pairs) / math.log(m / (m - 1)) for m in candidates)


def cdp_threshold(matrix: MarginMatrix) -> int:
    """Smallest positive integer p for which ``cdp_holds`` is true."""
    require_valid(matrix)
    p = 1
    while not cdp_holds(matrix, p):
        p += 1
    return p


@dataclass(frozen=True)
class TraceEntry:
    p: int
    ordering: Ordering
    q: int
    multiplicity: int


@dataclass
class ConvergenceReport:
    p_star_bound: float
    cdp_threshold: int
    ranked_pairs: Ordering
    limit: Ordering
    trace: list[TraceEntry]
    stabilized_at: int | None
    agrees: bool
    flips: list[int] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


def convergence_profile(matrix: MarginMatrix, p_max: int, threads: int = 1,
                        max_candidates: int | None = None) -> ConvergenceReport:
    """Solve the exact p-ordering for p = 1..p_max and compare with Ranked Pairs."""
    require_valid(matrix)
    if p_max < 1:
        raise ValueError("p_max must be at least 1")
    threshold = cdp_threshold(matrix)
    bound = p_star_bound(matrix)
    rp = ranked_pairs(matrix)
    limit = limit_ordering(matrix, max_candidates=max_candidates)
    notes = []
    if p_max < threshold:
        msg = f"p_max={p_max} is below the dominance threshold {threshold}; no convergence verdict"
        warnings.warn(msg, stacklevel=2)
        notes.append(msg)

    def solve(p: int) -> TraceEntry:
        sol = p_ordering_solve(matrix, p, max_candidates=max_candidates)
        return TraceEntry(p, sol.ordering, q_sum(matrix, sol.ordering, p).exact, sol.multiplicity)

    ps = range(1, p_max + 1)
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            trace = list(pool.map(solve, ps))
    else:
        trace = [solve(p) for p in ps]

    flips = [b.p for a, b in zip(trace, trace[1:]) if a.ordering != b.ordering]
    stabilized_at = None
    for entry in reversed(trace):
        if entry.ordering != rp:
            break
        stabilized_at = entry.p

    tail = [e for e in trace if e.p >= threshold]
    agrees = bool(tail) and rp == limit and all(e.ordering == rp and e.multiplicity == 1 for e in tail)
    return ConvergenceReport(bound, threshold, rp, limit, trace, stabilized_at, agrees, flips, notes)


@dataclass(frozen=True)
class TheoremCheck:
    """One matrix's comparison of the exact p-ordering against Ranked Pairs."""

    index: int
    threshold: int
    bound: float
    ps: tuple[int, ...]
    orderings: tuple[Ordering, ...]
    multiplicities: tuple[int, ...]
    ranked_pairs: Ordering
    limit: Ordering
    dominance_at_bound: bool

    @property
    def ok(self) -> bool:
        return (
            self.dominance_at_bound
            and self.threshold <= math.ceil(self.bound)
            and self.ranked_pairs == self.limit
            and all(o == self.ranked_pairs for o in self.orderings)
            and all(k == 1 for k in self.multiplicities)
        )


def check_theorem(matrix: MarginMatrix, offsets: Sequence[int] = (0, 7), index: int = 0) -> TheoremCheck:
    threshold = cdp_threshold(matrix)
    bound = p_star_bound(matrix)
    ps = tuple(threshold + k for k in offsets)
    sols = [p_ordering_solve(matrix, p) for p in ps]
    return TheoremCheck(
        index=index,
        threshold=threshold,
        bound=bound,
        ps=ps,
        orderings=tuple(s.ordering for s in sols),
        multiplicities=tuple(s.multiplicity for s in sols),
        ranked_pairs=ranked_pairs(matrix),
        limit=limit_ordering(matrix),
        dominance_at_bound=cdp_holds(matrix, math.ceil(bound)),
    )


def check_theorem_batch(matrices: Sequence[MarginMatrix], offsets: Sequence[int] = (0, 7),
                        threads: int = 1) -> list[TheoremCheck]:
    """Run ``check_theorem`` over many matrices; result order follows the input."""
    jobs = list(enumerate(matrices))

    def run(job):
        k, matrix = job
        return check_theorem(matrix, offsets, k)

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            return list(pool.map(run, jobs))
    return [run(job) for job in jobs]
