"""Exponent tuples, the suffix-sum dominance conditions and integerization.

An inequality instance compares

    prod(q) * prod(x**p_j - 1)  <=  prod(p) * prod(x**q_j - 1)

for two sorted tuples ``p`` and ``q`` of positive rationals of equal length.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Union

from .errors import EmptyTuple, InputError, LengthMismatch, NonPositiveExponent

RationalLike = Union[int, Fraction, str]


def to_rational(value: RationalLike) -> Fraction:
    """Convert an int, Fraction or ``"a"``/``"a/b"`` string to a Fraction.

    Floats are rejected: they would silently smuggle rounding into the exact
    pipeline.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise InputError(f"exponent {value!r} must be exact (int, Fraction or 'a/b' string)")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise InputError(f"cannot parse {value!r} as a rational") from exc


@dataclass(frozen=True)
class ExponentTuple:
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.entries:
            raise EmptyTuple("exponent tuple is empty")
        for e in self.entries:
            if e <= 0:
                raise NonPositiveExponent(f"exponent {e} is not positive")
        if any(a > b for a, b in zip(self.entries, self.entries[1:])):
            raise InputError("exponent tuple entries must be ascending; use normalize()")

    @property
    def n(self) -> int:
        return len(self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def total(self) -> Fraction:
        return sum(self.entries, Fraction(0))

    def product(self) -> Fraction:
        return math.prod(self.entries, start=Fraction(1))

    def is_integral(self) -> bool:
        return all(e.denominator == 1 for e in self.entries)

    def __str__(self):
        return "(" + ", ".join(str(e) for e in self.entries) + ")"


def normalize(raw: Iterable[RationalLike]) -> ExponentTuple:
    """Return the ascending ExponentTuple holding the given exponents."""
    values = [to_rational(v) for v in raw]
    if not values:
        raise EmptyTuple("exponent tuple is empty")
    for v in values:
        if v <= 0:
            raise NonPositiveExponent(f"exponent {v} is not positive")
    return ExponentTuple(tuple(sorted(values)))


def as_tuple(value: Union[ExponentTuple, Iterable[RationalLike]]) -> ExponentTuple:
    if isinstance(value, ExponentTuple):
        return value
    return normalize(value)


@dataclass(frozen=True)
class InequalityInstance:
    p: ExponentTuple
    q: ExponentTuple
    coeff_left: Fraction = field(init=False)
    coeff_right: Fraction = field(init=False)

    def __post_init__(self):
        if len(self.p) != len(self.q):
            raise LengthMismatch(f"tuples have lengths {len(self.p)} and {len(self.q)}")
        object.__setattr__(self, "coeff_left", self.q.product())
        object.__setattr__(self, "coeff_right", self.p.product())

    @classmethod
    def of(cls, p, q) -> "InequalityInstance":
        return cls(as_tuple(p), as_tuple(q))

    @property
    def n(self) -> int:
        return len(self.p)

    @property
    def reduced(self) -> tuple[int, int]:
        # ratio in lowest terms: (a1/a2) : (b1/b2) == a1*b2 : a2*b1
        ratio = self.coeff_left / self.coeff_right
        return ratio.numerator, ratio.denominator

    @property
    def reduced_left(self) -> int:
        return self.reduced[0]

    @property
    def reduced_right(self) -> int:
        return self.reduced[1]

    @property
    def sums_equal(self) -> bool:
        return self.p.total() == self.q.total()


class LevelCheck(NamedTuple):
    k: int
    suffix_p: Fraction
    suffix_q: Fraction
    satisfied: bool


@dataclass(frozen=True)
class DominanceReport:
    sums_equal: bool
    total_p: Fraction
    total_q: Fraction
    level_checks: tuple[LevelCheck, ...]
    first_violation: Optional[int]
    satisfied: bool


def check_dominance(p, q) -> DominanceReport:
    """Check equal totals and ``sum(p[k:]) <= sum(q[k:])`` for levels k = 2..n.

    Levels are 1-indexed as in the usual statement: level k compares the sums
    of entries k..n.
    """
    p, q = as_tuple(p), as_tuple(q)
    n = len(p)
    if len(q) != n:
        raise LengthMismatch(f"tuples have lengths {n} and {len(q)}")
    checks = []
    sp = sq = Fraction(0)
    for i in range(n - 1, 0, -1):
        sp += p[i]
        sq += q[i]
        checks.append(LevelCheck(i + 1, sp, sq, sp <= sq))
    checks.reverse()
    total_p, total_q = sp + p[0], sq + q[0]
    sums_equal = total_p == total_q
    first = next((c.k for c in checks if not c.satisfied), None)
    return DominanceReport(
        sums_equal=sums_equal,
        total_p=total_p,
        total_q=total_q,
        level_checks=tuple(checks),
        first_violation=first,
        satisfied=sums_equal and first is None,
    )


class Integerized(NamedTuple):
    p_int: tuple[int, ...]
    q_int: tuple[int, ...]
    scale: int


def integerize(p, q) -> Integerized:
    """Scale both tuples by the lcm of all denominators.

    With ``t = x**(1/scale)`` the map x -> t preserves (1, inf) and (0, 1), and
    ``x**e - 1 == t**(scale*e) - 1``, so the integer instance is equivalent.
    """
    p, q = as_tuple(p), as_tuple(q)
    scale = math.lcm(*(e.denominator for e in (*p, *q)))
    return Integerized(
        tuple(int(e * scale) for e in p),
        tuple(int(e * scale) for e in q),
        scale,
    )


class UnitDirection(enum.Enum):
    SAME = "same"
    REVERSED = "reversed"


def reciprocal_direction(n: int) -> UnitDirection:
    """Direction of the inequality on 0 < x < 1 for dominance-satisfying tuples of length n."""
    if n < 1:
        raise InputError("n must be at least 1")
    return UnitDirection.SAME if n % 2 == 0 else UnitDirection.REVERSED

