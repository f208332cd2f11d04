"""p-norms of the margins that go against an ordering, and the signed Q-sum.

Integer exponents are evaluated exactly with Python integers; anything else
falls back to double precision and is only meant for exploration.
"""
from __future__ import annotations

import math
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction

from .core import MarginMatrix, check_ordering

# relative gap below which two floating objective values are treated as tied
FLOAT_TIE_RTOL = 1e-12


@dataclass(frozen=True)
class PExponent:
    value: Fraction

    def __post_init__(self):
        value = Fraction(self.value)
        if value <= 0:
            raise ValueError(f"p must be positive, got {value}")
        object.__setattr__(self, "value", value)

    @classmethod
    def parse(cls, p: int | float | str | Fraction | PExponent) -> PExponent:
        if isinstance(p, PExponent):
            return p
        if isinstance(p, float):
            if not math.isfinite(p):
                raise ValueError(f"p must be finite, got {p}")
            return cls(Fraction(repr(p)))
        if isinstance(p, str):
            try:
                return cls(Fraction(p.strip()))
            except (ValueError, ZeroDivisionError):
                raise ValueError(f"invalid exponent {p!r}") from None
        return cls(Fraction(p))

    @property
    def is_integer(self) -> bool:
        return self.value.denominator == 1

    def __int__(self) -> int:
        if not self.is_integer:
            raise ValueError(f"p = {self.value} is not an integer")
        return self.value.numerator

    def __float__(self) -> float:
        return float(self.value)

    def __str__(self) -> str:
        return str(self.value) if self.is_integer else repr(float(self.value))


def magnitude_power(x: int, p: PExponent) -> int | float:
    """``|x|**p``: exact for integer p, via exp/log otherwise."""
    x = abs(x)
    if p.is_integer:
        return x ** int(p)
    if x == 0:
        return 0.0
    return math.exp(float(p) * math.log(x))


def root(total: int | float, p: PExponent) -> float:
    """``total ** (1/p)`` for a nonnegative (possibly huge) total."""
    if total == 0:
        return 0.0
    if isinstance(total, int) and total.bit_length() > 1000:
        approx = math.exp(math.log(total) / float(p))
    else:
        approx = float(total) ** (1.0 / float(p))
    if isinstance(total, int) and p.is_integer and approx < 2**53:
        # single-entry norms such as (6**p)**(1/p) come out exact
        r = round(approx)
        if r ** int(p) == total:
            return float(r)
    return approx


def lp_norm(vector: Iterable[int], p) -> float:
    p = PExponent.parse(p)
    return root(sum(magnitude_power(x, p) for x in vector), p)


def signed_entries(matrix: MarginMatrix, ordering: Sequence[int]) -> list[int]:
    """Upper-triangle entries of the matrix viewed under ``ordering``."""
    perm = check_ordering(ordering, matrix.n)
    m = matrix.m
    return [m[perm[r]][perm[c]] for r in range(len(perm)) for c in range(r + 1, len(perm))]


def negative_mass(matrix: MarginMatrix, ordering: Sequence[int], p) -> int | float:
    """Sum of |m|**p over the upper-triangle entries that are negative."""
    p = PExponent.parse(p)
    return sum(magnitude_power(v, p) for v in signed_entries(matrix, ordering) if v < 0)


def positive_mass(matrix: MarginMatrix, ordering: Sequence[int], p) -> int | float:
    p = PExponent.parse(p)
    return sum(magnitude_power(v, p) for v in signed_entries(matrix, ordering) if v > 0)


def p_norm(matrix: MarginMatrix, ordering: Sequence[int], p) -> float:
    p = PExponent.parse(p)
    return root(negative_mass(matrix, ordering, p), p)


def positive_p_norm(matrix: MarginMatrix, ordering: Sequence[int], p) -> float:
    p = PExponent.parse(p)
    return root(positive_mass(matrix, ordering, p), p)


def total_mass(matrix: MarginMatrix, p) -> int | float:
    """Sum of |m|**p over all pairs; the same for every ordering."""
    p = PExponent.parse(p)
    return sum(magnitude_power(v, p) for v in matrix.magnitudes())


@dataclass(frozen=True)
class QValue:
    """A Q-sum: exact when p is an integer, always with a float approximation."""

    exact: int | None
    approx: float

    @classmethod
    def of(cls, value: int | float) -> QValue:
        if isinstance(value, int):
            return cls(value, _int_to_float(value))
        return cls(None, float(value))

    def __lt__(self, other: QValue) -> bool:
        if self.exact is not None and other.exact is not None:
            return self.exact < other.exact
        return self.approx < other.approx

    def __le__(self, other: QValue) -> bool:
        return self == other or self < other

    def __gt__(self, other: QValue) -> bool:
        return other < self

    def __ge__(self, other: QValue) -> bool:
        return other <= self


def _int_to_float(value: int) -> float:
    try:
        return float(value)
    except OverflowError:
        return -math.inf if value < 0 else math.inf


def q_sum(matrix: MarginMatrix, ordering: Sequence[int], p) -> QValue:
    """Signed sum of |m|**p over the upper triangle under ``ordering``."""
    p = PExponent.parse(p)
    total = 0
    for v in signed_entries(matrix, ordering):
        if v > 0:
            total += magnitude_power(v, p)
        elif v < 0:
            total -= magnitude_power(v, p)
    return QValue.of(total)


def floats_tied(a: float, b: float, rtol: float = FLOAT_TIE_RTOL) -> bool:
    """True when two floating objectives are too close to call."""
    return abs(a - b) <= rtol * max(abs(a), abs(b))


@dataclass(frozen=True)
class WeightFunction:
    """A tabulated, non-decreasing weight over margin magnitudes."""

    table: Mapping[int, Fraction]

    def __post_init__(self):
        table = {int(k): Fraction(v) for k, v in self.table.items()}
        previous = None
        for mag in sorted(table):
            if mag < 0:
                raise ValueError("weights are indexed by magnitudes, which are nonnegative")
            if table[mag] < 0:
                raise ValueError(f"weight at {mag} is negative")
            if previous is not None and table[mag] < previous:
                raise ValueError(f"weight decreases at magnitude {mag}")
            previous = table[mag]
        object.__setattr__(self, "table", table)

    @classmethod
    def tabulate(cls, f: Callable[[int], int | Fraction], magnitudes: Iterable[int]) -> WeightFunction:
        return cls({abs(m): Fraction(f(abs(m))) for m in magnitudes})

    @classmethod
    def power(cls, p: int, magnitudes: Iterable[int]) -> WeightFunction:
        return cls.tabulate(lambda x: x**p, magnitudes)

    def __call__(self, magnitude: int) -> Fraction:
        try:
            return self.table[abs(magnitude)]
        except KeyError:
            raise KeyError(f"weight function undefined at magnitude {abs(magnitude)}") from None


def q_f_sum(matrix: MarginMatrix, ordering: Sequence[int], f: WeightFunction) -> Fraction:
    total = Fraction(0)
    for v in signed_entries(matrix, ordering):
        if v > 0:
            total += f(v)
        elif v < 0:
            total -= f(v)
    return total
