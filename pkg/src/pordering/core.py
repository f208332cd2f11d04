"""Election profiles, margin-of-victory matrices and the input file formats.

Candidates are identified by their position in ``candidates`` (0..n-1); an
ordering is a tuple of those indices, first place first.
"""
from __future__ import annotations

import random
import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

Ordering = tuple[int, ...]

_COUNT_LINE = re.compile(r"^\s*(\S+)\s*:\s*(.*)$")


class ElectionError(ValueError):
    """Base class for malformed or inadmissible election input."""


class ParseError(ElectionError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def check_ordering(ordering: Sequence[int], n: int) -> Ordering:
    ordering = tuple(int(c) for c in ordering)
    if len(ordering) != n:
        raise ValueError(f"ordering has {len(ordering)} entries, expected {n}")
    if sorted(ordering) != list(range(n)):
        raise ValueError(f"ordering {ordering} is not a permutation of 0..{n - 1}")
    return ordering


def _check_names(names: Sequence[str]) -> tuple[str, ...]:
    names = tuple(names)
    seen = set()
    for name in names:
        if not name or any(ch.isspace() for ch in name):
            raise ElectionError(f"invalid candidate name {name!r}")
        if name in seen:
            raise ElectionError(f"duplicate candidate {name!r}")
        seen.add(name)
    return names


@dataclass(frozen=True)
class Ballot:
    ranking: Ordering
    count: int = 1

    def __post_init__(self):
        if self.count < 1:
            raise ElectionError(f"ballot count must be positive, got {self.count}")


@dataclass(frozen=True)
class ElectionProfile:
    candidates: tuple[str, ...]
    ballots: tuple[Ballot, ...]

    def __post_init__(self):
        object.__setattr__(self, "candidates", _check_names(self.candidates))
        object.__setattr__(self, "ballots", tuple(self.ballots))
        n = len(self.candidates)
        for ballot in self.ballots:
            try:
                check_ordering(ballot.ranking, n)
            except ValueError as exc:
                raise ElectionError(f"ranking is not a permutation: {exc}") from None
        if self.voters < 1:
            raise ElectionError("profile has no voters")

    @property
    def n(self) -> int:
        return len(self.candidates)

    @property
    def voters(self) -> int:
        return sum(b.count for b in self.ballots)

    @classmethod
    def from_rankings(cls, candidates: Sequence[str], rankings: Iterable[Sequence[str]]) -> ElectionProfile:
        """Build a profile from name rankings, one voter each."""
        index = {name: i for i, name in enumerate(candidates)}
        ballots = [Ballot(tuple(index[name] for name in r)) for r in rankings]
        return cls(tuple(candidates), tuple(ballots))


@dataclass(frozen=True)
class MarginMatrix:
    """Antisymmetric integer matrix; ``m[i][j]`` is i's net margin over j."""

    candidates: tuple[str, ...]
    m: tuple[tuple[int, ...], ...] = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "candidates", _check_names(self.candidates))
        rows = tuple(tuple(int(x) for x in row) for row in self.m)
        n = len(self.candidates)
        if len(rows) != n or any(len(row) != n for row in rows):
            raise ElectionError(f"margin matrix must be {n}x{n}")
        for i in range(n):
            if rows[i][i] != 0:
                raise ElectionError("diagonal margins must be zero")
            for j in range(i + 1, n):
                if rows[i][j] != -rows[j][i]:
                    raise ElectionError(
                        f"margins not antisymmetric at {self.candidates[i]},{self.candidates[j]}"
                    )
        object.__setattr__(self, "m", rows)

    @classmethod
    def from_upper(cls, candidates: Sequence[str], upper: dict[tuple[int, int], int]) -> MarginMatrix:
        n = len(candidates)
        m = [[0] * n for _ in range(n)]
        for (i, j), v in upper.items():
            m[i][j] = v
            m[j][i] = -v
        return cls(tuple(candidates), tuple(map(tuple, m)))

    @classmethod
    def from_pairs(cls, candidates: Sequence[str], pairs: dict[tuple[str, str], int]) -> MarginMatrix:
        """Build from named pairs, e.g. ``{("A", "B"): 1}`` meaning A beats B by 1."""
        index = {name: i for i, name in enumerate(candidates)}
        return cls.from_upper(candidates, {(index[a], index[b]): v for (a, b), v in pairs.items()})

    @property
    def n(self) -> int:
        return len(self.candidates)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.m[i][j]

    def upper(self) -> list[tuple[int, int, int]]:
        return [(i, j, self.m[i][j]) for i in range(self.n) for j in range(i + 1, self.n)]

    def magnitudes(self) -> list[int]:
        return [abs(v) for _, _, v in self.upper()]

    def __neg__(self) -> MarginMatrix:
        return MarginMatrix(self.candidates, tuple(tuple(-x for x in row) for row in self.m))

    def scaled(self, factor: int) -> MarginMatrix:
        return MarginMatrix(self.candidates, tuple(tuple(factor * x for x in row) for row in self.m))

    def without(self, candidate: int) -> MarginMatrix:
        """The matrix of the election with ``candidate`` deleted."""
        keep = [i for i in range(self.n) if i != candidate]
        return MarginMatrix(
            tuple(self.candidates[i] for i in keep),
            tuple(tuple(self.m[i][j] for j in keep) for i in keep),
        )

    def names(self, ordering: Sequence[int]) -> list[str]:
        return [self.candidates[c] for c in ordering]

    def ordering_of(self, names: Iterable[str]) -> Ordering:
        index = {name: i for i, name in enumerate(self.candidates)}
        return check_ordering([index[x] for x in names], self.n)


def margin_matrix(profile: ElectionProfile) -> MarginMatrix:
    n = profile.n
    m = [[0] * n for _ in range(n)]
    for ballot in profile.ballots:
        r, k = ballot.ranking, ballot.count
        for a in range(n):
            for b in range(a + 1, n):
                m[r[a]][r[b]] += k
                m[r[b]][r[a]] -= k
    return MarginMatrix(profile.candidates, tuple(map(tuple, m)))


def reverse_profile(profile: ElectionProfile) -> ElectionProfile:
    return ElectionProfile(
        profile.candidates,
        tuple(Ballot(b.ranking[::-1], b.count) for b in profile.ballots),
    )


def permuted_view(matrix: MarginMatrix, ordering: Sequence[int]) -> MarginMatrix:
    """Rewrite the matrix with rows and columns listed in ``ordering``."""
    perm = check_ordering(ordering, matrix.n)
    return MarginMatrix(
        tuple(matrix.candidates[c] for c in perm),
        tuple(tuple(matrix.m[r][c] for c in perm) for r in perm),
    )


def promote(profile: ElectionProfile, ballot_index: int, candidate: int, steps: int = 1) -> ElectionProfile:
    """Move ``candidate`` up ``steps`` places on one voter of ballot ``ballot_index``.

    The relative order of every other candidate is unchanged. A ballot with
    multiplicity > 1 is split so only a single voter changes.
    """
    ballot = profile.ballots[ballot_index]
    ranking = list(ballot.ranking)
    pos = ranking.index(candidate)
    if not 1 <= steps <= pos:
        raise ValueError(f"cannot move candidate up {steps} places from position {pos}")
    ranking.pop(pos)
    ranking.insert(pos - steps, candidate)
    ballots = list(profile.ballots)
    moved = Ballot(tuple(ranking), 1)
    if ballot.count == 1:
        ballots[ballot_index] = moved
    else:
        ballots[ballot_index] = Ballot(ballot.ranking, ballot.count - 1)
        ballots.append(moved)
    return ElectionProfile(profile.candidates, tuple(ballots))


# --------------------------------------------------------------------------
# Validity of the no-ties assumption


@dataclass(frozen=True)
class Violation:
    kind: str  # "zero" or "duplicate"
    pairs: tuple[tuple[int, int], ...]
    magnitude: int

    def describe(self, candidates: Sequence[str]) -> str:
        names = ", ".join(f"{candidates[i]},{candidates[j]}" for i, j in self.pairs)
        if self.kind == "zero":
            return f"zero margin {names}"
        return f"duplicate magnitude {self.magnitude} ({names})"


@dataclass(frozen=True)
class Verdict:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def messages(self, candidates: Sequence[str]) -> list[str]:
        return [v.describe(candidates) for v in self.violations]


def validate_margins(matrix: MarginMatrix) -> Verdict:
    """Check that every pairwise margin is nonzero and all magnitudes are distinct."""
    by_magnitude: dict[int, list[tuple[int, int]]] = {}
    for i, j, v in matrix.upper():
        by_magnitude.setdefault(abs(v), []).append((i, j))
    violations = []
    for i, j in by_magnitude.get(0, []):
        violations.append(Violation("zero", ((i, j),), 0))
    for mag in sorted(by_magnitude):
        pairs = by_magnitude[mag]
        if mag and len(pairs) > 1:
            violations.append(Violation("duplicate", tuple(pairs), mag))
    return Verdict(tuple(violations))


class InvalidMarginsError(ElectionError):
    def __init__(self, matrix: MarginMatrix, verdict: Verdict):
        self.verdict = verdict
        super().__init__(
            "margins violate the distinct-nonzero assumption: "
            + "; ".join(verdict.messages(matrix.candidates))
        )


def require_valid(matrix: MarginMatrix, allow_ties: bool = False) -> Verdict:
    verdict = validate_margins(matrix)
    if not verdict.ok and not allow_ties:
        raise InvalidMarginsError(matrix, verdict)
    return verdict


# --------------------------------------------------------------------------
# Parsing


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_election(text: str) -> ElectionProfile | MarginMatrix:
    """Parse a ballots-form or margins-form document.

    Ballots form::

        candidates: A B C
        2: A > B > C
        1: C > B > A

    Margins form::

        candidates: A B C
        margins:
        A B -1
        A C 2
    """
    lines = [(k + 1, _strip(raw)) for k, raw in enumerate(text.splitlines())]
    lines = [(k, line) for k, line in lines if line]
    if not lines:
        raise ParseError("empty document", 1)

    lineno, header = lines[0]
    key, _, rest = header.partition(":")
    if key.strip() != "candidates" or not _:
        raise ParseError("expected 'candidates: <name> ...' header", lineno)
    names = rest.split()
    if not names:
        raise ParseError("no candidates declared", lineno)
    seen: set[str] = set()
    for name in names:
        if name in seen:
            raise ParseError(f"duplicate candidate {name!r}", lineno)
        if ">" in name or ":" in name:
            raise ParseError(f"invalid candidate name {name!r}", lineno)
        seen.add(name)
    index = {name: i for i, name in enumerate(names)}

    body = lines[1:]
    if body and body[0][1] == "margins:":
        return _parse_margins(names, index, body[1:])
    return _parse_ballots(names, index, body)


def _lookup(index: dict[str, int], name: str, lineno: int) -> int:
    try:
        return index[name]
    except KeyError:
        raise ParseError(f"unknown candidate {name!r}", lineno) from None


def _parse_ballots(names, index, body) -> ElectionProfile:
    if not body:
        raise ParseError("no ballots", None)
    ballots = []
    for lineno, line in body:
        match = _COUNT_LINE.match(line)
        if not match:
            raise ParseError(f"expected '<count>: <ranking>', got {line!r}", lineno)
        count_text, ranking_text = match.groups()
        try:
            count = int(count_text)
        except ValueError:
            raise ParseError(f"count {count_text!r} is not an integer", lineno) from None
        if count < 1:
            raise ParseError(f"count must be positive, got {count}", lineno)
        parts = [p.strip() for p in ranking_text.split(">")]
        if any(not p for p in parts):
            raise ParseError(f"malformed ranking {ranking_text!r}", lineno)
        ranking = tuple(_lookup(index, p, lineno) for p in parts)
        if sorted(ranking) != list(range(len(names))):
            raise ParseError("ranking is not a permutation of the candidates", lineno)
        ballots.append(Ballot(ranking, count))
    return ElectionProfile(tuple(names), tuple(ballots))


def _parse_margins(names, index, body) -> MarginMatrix:
    upper: dict[tuple[int, int], int] = {}
    for lineno, line in body:
        fields = line.split()
        if len(fields) != 3:
            raise ParseError(f"expected '<name> <name> <integer>', got {line!r}", lineno)
        a, b, value_text = fields
        i, j = _lookup(index, a, lineno), _lookup(index, b, lineno)
        if i == j:
            raise ParseError(f"self-margin for {a!r}", lineno)
        try:
            value = int(value_text)
        except ValueError:
            raise ParseError(f"margin {value_text!r} is not an integer", lineno) from None
        if i > j:
            i, j, value = j, i, -value
        if (i, j) in upper:
            if upper[(i, j)] != value:
                raise ParseError(f"asymmetric duplicate margin for {a},{b}", lineno)
            continue
        upper[(i, j)] = value
    return MarginMatrix.from_upper(names, upper)


def format_margins(matrix: MarginMatrix) -> str:
    lines = ["candidates: " + " ".join(matrix.candidates), "margins:"]
    for i, j, v in matrix.upper():
        lines.append(f"{matrix.candidates[i]} {matrix.candidates[j]} {v}")
    return "\n".join(lines) + "\n"


def format_ballots(profile: ElectionProfile) -> str:
    lines = ["candidates: " + " ".join(profile.candidates)]
    for b in profile.ballots:
        lines.append(f"{b.count}: " + " > ".join(profile.candidates[c] for c in b.ranking))
    return "\n".join(lines) + "\n"


def default_names(n: int) -> tuple[str, ...]:
    if n <= 26:
        return tuple(chr(ord("A") + k) for k in range(n))
    return tuple(f"C{k}" for k in range(n))


def random_margin_matrix(rng: random.Random, n: int, max_magnitude: int = 50) -> MarginMatrix:
    """A tournament with distinct nonzero magnitudes drawn from 1..max_magnitude."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mags = rng.sample(range(1, max_magnitude + 1), len(pairs))
    upper = {ij: mag * rng.choice((1, -1)) for ij, mag in zip(pairs, mags)}
    return MarginMatrix.from_upper(default_names(n), upper)


# Worked examples used throughout the tests and the CLI demos.

E3 = MarginMatrix.from_pairs("ABC", {("A", "B"): -1, ("A", "C"): 2, ("B", "C"): -3})
E4A = MarginMatrix.from_pairs(
    "ABCD",
    {("A", "B"): 1, ("A", "C"): 11, ("A", "D"): -7, ("B", "C"): 5, ("B", "D"): 3, ("C", "D"): 9},
)
E4B = MarginMatrix.from_pairs(
    "CABD",
    {("C", "A"): 1, ("C", "B"): -2, ("C", "D"): 5, ("A", "B"): 6, ("A", "D"): -3, ("B", "D"): 4},
)
