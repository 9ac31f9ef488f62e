"""Interval-arithmetic checks for forms the exact pipeline cannot represent.

Two uses: the fractional-power inequality

    x^((1 + r - (p + r)/q)/2) (x^p - 1)(x^((p + r)/q) - 1) <= (p/q)(x^(p + r) - 1)(x - 1)

for 0 <= p, 1 <= q, 0 <= r with p + r <= (1 + r) q, and sampling scans of the
product inequality with arbitrary real exponents. Every value is an mpmath
interval enclosure; its radius is the reported error bound.
"""

from __future__ import annotations

import enum
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import mpmath
from mpmath import iv, mp

from .errors import ConstraintViolation, InputError, PrecisionExhausted

DEFAULT_PREC = 256
DEFAULT_TAU = mpmath.mpf("1e-30")

DEFAULT_GRID = (0, Fraction(1, 4), Fraction(1, 2), 1, 2, 5)


@contextmanager
def precision(prec: int):
    """Set the working precision of both the interval and the point contexts."""
    saved = iv.prec, mp.prec
    iv.prec = mp.prec = prec
    try:
        yield
    finally:
        iv.prec, mp.prec = saved


def to_interval(value):
    """Enclose an exact or decimal value in an interval at the current iv precision."""
    if isinstance(value, iv.mpf):
        return value
    if isinstance(value, bool):
        raise InputError(f"not a number: {value!r}")
    if isinstance(value, (int, Fraction)):
        value = Fraction(value)
        return iv.mpf(value.numerator) / iv.mpf(value.denominator)
    if isinstance(value, float):
        return iv.mpf(value)
    if isinstance(value, mpmath.mpf):
        return iv.mpf(value)
    if isinstance(value, str):
        try:
            return to_interval(Fraction(value))
        except ValueError:
            return iv.mpf(value)
    raise InputError(f"cannot convert {value!r} to an interval")


def _mid(x) -> mpmath.mpf:
    return mp.mpf(x.mid)


def _rad(x) -> mpmath.mpf:
    return mp.mpf(x.delta) / 2


def _factor(x, e):
    """Enclosure of x**e - 1; exact zero for x == 1 or e == 0."""
    return x ** e - 1


class Comparison(enum.Enum):
    HOLDS = "holds"
    EQUAL = "equal"
    VIOLATED = "violated"


@dataclass(frozen=True)
class NumericSides:
    lhs: mpmath.mpf
    rhs: mpmath.mpf
    error: mpmath.mpf
    gap: mpmath.mpf

    def classify(self, tau=DEFAULT_TAU) -> Comparison:
        """HOLDS if rhs - lhs exceeds the error bound, VIOLATED if lhs - rhs exceeds
        error bound plus the relative band tau, EQUAL otherwise."""
        band = self.error + tau * max(abs(self.lhs), abs(self.rhs))
        if self.gap > self.error:
            return Comparison.HOLDS
        if -self.gap > band:
            return Comparison.VIOLATED
        return Comparison.EQUAL


def _sides_from_intervals(lhs, rhs) -> NumericSides:
    lo, hi = _mid(lhs), _mid(rhs)
    return NumericSides(lo, hi, _rad(lhs) + _rad(rhs), hi - lo)


@dataclass(frozen=True)
class FurutaParams:
    p: Fraction
    q: Fraction
    r: Fraction

    def __post_init__(self):
        for name in ("p", "q", "r"):
            v = getattr(self, name)
            if isinstance(v, float):
                v = Fraction(v)
            object.__setattr__(self, name, Fraction(v))
        if self.p < 0 or self.r < 0:
            raise ConstraintViolation("p and r must be non-negative")
        if self.q < 1:
            raise ConstraintViolation("q must be at least 1")
        if self.p + self.r > (1 + self.r) * self.q:
            raise ConstraintViolation(
                f"p + r = {self.p + self.r} exceeds (1 + r) q = {(1 + self.r) * self.q}"
            )

    @property
    def prefactor_exponent(self) -> Fraction:
        return (1 + self.r - (self.p + self.r) / self.q) / 2


def furuta_sides(
    params: FurutaParams, x, prec: int = DEFAULT_PREC, tau=DEFAULT_TAU
) -> NumericSides:
    """Both sides of the fractional-power inequality at x with an error bound.

    Raises PrecisionExhausted when the error band swallows the gap and is itself
    wider than the relative tolerance tau, i.e. more precision is needed.
    """
    with precision(prec):
        xi = to_interval(x)
        if xi.a <= 0:
            raise InputError("x must be positive")
        p, q, r = (to_interval(v) for v in (params.p, params.q, params.r))
        s = (p + r) / q
        e = to_interval(params.prefactor_exponent)
        lhs = xi ** e * _factor(xi, p) * _factor(xi, s)
        rhs = (p / q) * _factor(xi, p + r) * (xi - 1)
        sides = _sides_from_intervals(lhs, rhs)
        scale = max(abs(sides.lhs), abs(sides.rhs))
        if abs(sides.gap) <= sides.error and sides.error > tau * scale:
            raise PrecisionExhausted(
                f"error bound {mpmath.nstr(sides.error, 5)} exceeds gap {mpmath.nstr(sides.gap, 5)}"
            )
    return sides


def product_sides(p: Sequence, q: Sequence, x, prec: int = DEFAULT_PREC) -> NumericSides:
    """``prod(q)*prod(x^p_j - 1)`` and ``prod(p)*prod(x^q_j - 1)`` as enclosures."""
    if len(p) != len(q):
        raise InputError("tuples must have equal length")
    with precision(prec):
        xi = to_interval(x)
        pi = [to_interval(v) for v in p]
        qi = [to_interval(v) for v in q]
        lhs = iv.mpf(1)
        rhs = iv.mpf(1)
        for v in qi:
            lhs *= v
        for v in pi:
            rhs *= v
        for v in pi:
            lhs *= _factor(xi, v)
        for v in qi:
            rhs *= _factor(xi, v)
        return _sides_from_intervals(lhs, rhs)


@dataclass(frozen=True)
class ScanConfig:
    low: object = 1
    high: object = 10
    count: int = 1000
    prec: int = DEFAULT_PREC
    tau: object = DEFAULT_TAU

    def __post_init__(self):
        if not to_interval(self.low).a > 0:
            raise InputError("scan range must lie in (0, inf)")
        if self.count < 1:
            raise InputError("sample count must be positive")
        if not self.tau > 0:
            raise InputError("tolerance must be positive")

    def points(self) -> list:
        """``count`` points spaced evenly over (low, high], left end excluded."""
        with precision(self.prec):
            lo, hi = to_interval(self.low), to_interval(self.high)
            return [lo + (hi - lo) * i / self.count for i in range(1, self.count + 1)]


@dataclass(frozen=True)
class ScanHit:
    x: mpmath.mpf
    lhs: mpmath.mpf
    rhs: mpmath.mpf
    error: mpmath.mpf


def scan_violation(p: Sequence, q: Sequence, cfg: ScanConfig = ScanConfig()) -> Optional[ScanHit]:
    """First sample where the left side exceeds the right beyond error bound plus tau."""
    with precision(cfg.prec):
        for x in cfg.points():
            sides = product_sides(p, q, x, cfg.prec)
            if sides.classify(cfg.tau) is Comparison.VIOLATED:
                return ScanHit(_mid(x), sides.lhs, sides.rhs, sides.error)
    return None


def log_grid(low, high, count: int, prec: int = DEFAULT_PREC) -> list:
    with precision(prec):
        a, b = mp.log(_mid(to_interval(low))), mp.log(_mid(to_interval(high)))
        if count == 1:
            return [mp.exp(a)]
        return [mp.exp(a + (b - a) * i / (count - 1)) for i in range(count)]


@dataclass
class SweepReport:
    points: int = 0
    skipped: int = 0
    min_gap: Optional[mpmath.mpf] = None
    min_gap_error: Optional[mpmath.mpf] = None
    min_location: Optional[tuple] = None
    inconclusive: int = 0
    alerts: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.alerts


def admissible_grid(ps: Iterable, qs: Iterable, rs: Iterable) -> list[FurutaParams]:
    out = []
    for p in ps:
        for q in qs:
            for r in rs:
                try:
                    out.append(FurutaParams(p, q, r))
                except ConstraintViolation:
                    continue
    return out


def furuta_sweep(
    params: Iterable[FurutaParams],
    xs: Iterable,
    prec: int = DEFAULT_PREC,
    tau=DEFAULT_TAU,
) -> SweepReport:
    """Minimum of rhs - lhs over a parameter grid; any gap below -(error + tau*scale) is an alert."""
    report = SweepReport()
    xs = list(xs)
    for prm in params:
        for x in xs:
            report.points += 1
            try:
                sides = furuta_sides(prm, x, prec, tau)
            except PrecisionExhausted:
                report.inconclusive += 1
                continue
            if report.min_gap is None or sides.gap < report.min_gap:
                report.min_gap = sides.gap
                report.min_gap_error = sides.error
                report.min_location = (prm.p, prm.q, prm.r, x)
            if sides.classify(tau) is Comparison.VIOLATED:
                report.alerts.append((prm, x, sides))
    return report


def default_sweep(prec: int = DEFAULT_PREC, tau=DEFAULT_TAU, x_points: int = 100) -> SweepReport:
    grid = admissible_grid(DEFAULT_GRID, [v for v in DEFAULT_GRID if v >= 1], DEFAULT_GRID)
    return furuta_sweep(grid, log_grid(Fraction(1, 10), 10, x_points, prec), prec, tau)


__all__ = [
    "Comparison",
    "FurutaParams",
    "NumericSides",
    "ScanConfig",
    "ScanHit",
    "SweepReport",
    "admissible_grid",
    "default_sweep",
    "furuta_sides",
    "furuta_sweep",
    "log_grid",
    "precision",
    "product_sides",
    "scan_violation",
    "to_interval",
]
