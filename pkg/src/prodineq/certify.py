"""Decision procedure for ``prod(q) * prod(x**p_j - 1) <= prod(p) * prod(x**q_j - 1)``.

Everything reduces to the sign of one integer polynomial, the scaled
difference ``D = right - left`` in the integerized variable. A verdict carries
a certificate that :func:`verify_certificate` re-checks from ``D`` alone.

Certificates always speak about a *target* polynomial ``T`` on (1, inf):
``T = sign * D`` for the region ``x > 1`` and ``T = sign * reverse(D)`` for
``0 < x < 1`` (the substitution x -> 1/x maps (0, 1) onto (1, inf)).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Union

from .errors import UnequalSums
from .poly import (
    IntPoly,
    eval_rational,
    isolate_roots,
    negative_point,
    power_product,
    root_multiplicity_at_one,
    sign_at,
    sturm_chain,
    sub_scaled,
    taylor_shift_one,
)
from .tuples import (
    DominanceReport,
    InequalityInstance,
    UnitDirection,
    check_dominance,
    integerize,
    reciprocal_direction,
)

GT1 = "gt1"
UNIT = "unit"


@dataclass(frozen=True)
class DifferenceBuild:
    instance: InequalityInstance
    p_int: tuple[int, ...]
    q_int: tuple[int, ...]
    scale: int
    clearing_factor: int
    D: IntPoly

    @property
    def n(self) -> int:
        return self.instance.n


def build_difference(p, q) -> DifferenceBuild:
    inst = InequalityInstance.of(p, q)
    p_int, q_int, scale = integerize(inst.p, inst.q)
    right, left = inst.coeff_right, inst.coeff_left
    clearing = math.lcm(right.denominator, left.denominator)
    D = sub_scaled(
        power_product(q_int), int(right * clearing), power_product(p_int), int(left * clearing)
    )
    return DifferenceBuild(inst, p_int, q_int, scale, clearing, D)


# --- certificates -------------------------------------------------------------


@dataclass(frozen=True)
class IdenticallyZero:
    pass


@dataclass(frozen=True)
class ShiftedNonnegative:
    multiplicity: int
    coefficients: tuple[int, ...]
    region: str = GT1
    sign: int = 1


@dataclass(frozen=True)
class SturmPositive:
    multiplicity: int
    root_intervals: tuple[tuple[Fraction, Fraction], ...]
    samples: tuple[Fraction, ...]
    region: str = GT1
    sign: int = 1


@dataclass(frozen=True)
class Refutation:
    witness: Fraction
    value: Fraction
    region: str = GT1
    sign: int = 1


Certificate = Union[IdenticallyZero, ShiftedNonnegative, SturmPositive, Refutation]


def target_polynomial(D: IntPoly, region: str, sign: int) -> IntPoly:
    T = D if region == GT1 else D.reverse()
    return T if sign > 0 else -T


def certify_nonnegative(
    T: IntPoly, region: str = GT1, sign: int = 1, skip_shift: bool = False
) -> Certificate:
    """Certify ``T >= 0`` on (1, inf) or produce an exact refutation. T must be non-zero."""
    m, Q = root_multiplicity_at_one(T)
    if not skip_shift:
        shifted = taylor_shift_one(Q).coeffs
        if all(c >= 0 for c in shifted):
            return ShiftedNonnegative(m, shifted, region, sign)
    layout = isolate_roots(Q, 1)
    signs = layout.gap_signs()
    if all(s > 0 for s in signs):
        return SturmPositive(m, tuple(layout.intervals), tuple(layout.samples), region, sign)
    gap = signs.index(-1)
    w = negative_point(layout, gap)
    return Refutation(w, eval_rational(T, w), region, sign)


def _check_sturm_positive(Q: IntPoly, cert: SturmPositive) -> bool:
    if sign_at(Q, 1) == 0:
        return False
    chain = sturm_chain(Q)
    ivs, samples = cert.root_intervals, cert.samples
    if chain.count(1, None) != len(ivs) or len(samples) != len(ivs) + 1:
        return False
    if not ivs:
        return samples[0] > 1 and sign_at(Q, samples[0]) > 0
    prev = Fraction(1)
    for a, b in ivs:
        if not (prev <= a < b) or sign_at(Q, a) == 0 or sign_at(Q, b) == 0:
            return False
        if chain.count(a, b) != 1:
            return False
        prev = b
    # samples[0] in [1, a_1], samples[i] in [b_i, a_{i+1}], samples[-1] >= b_last
    bounds = [(Fraction(1), ivs[0][0])]
    bounds += [(ivs[i][1], ivs[i + 1][0]) for i in range(len(ivs) - 1)]
    bounds.append((ivs[-1][1], None))
    for s, (lo, hi) in zip(samples, bounds):
        if s < lo or (hi is not None and s > hi) or sign_at(Q, s) <= 0:
            return False
    return True


def verify_certificate(build: DifferenceBuild, cert: Certificate) -> bool:
    """Recompute the facts a certificate claims from ``build.D`` and confirm them."""
    D = build.D
    if isinstance(cert, IdenticallyZero):
        return D.is_zero()
    if D.is_zero() or cert.region not in (GT1, UNIT) or cert.sign not in (1, -1):
        return False
    T = target_polynomial(D, cert.region, cert.sign)
    try:
        if isinstance(cert, Refutation):
            return cert.witness > 1 and cert.value < 0 and eval_rational(T, cert.witness) == cert.value
        m, Q = root_multiplicity_at_one(T)
        if m != cert.multiplicity:
            return False
        if isinstance(cert, ShiftedNonnegative):
            shifted = taylor_shift_one(Q).coeffs
            return shifted == tuple(cert.coefficients) and all(c >= 0 for c in shifted)
        if isinstance(cert, SturmPositive):
            return _check_sturm_positive(Q, cert)
    except (ValueError, ArithmeticError):
        return False
    return False


# --- verdicts -----------------------------------------------------------------


class Outcome(enum.Enum):
    HOLDS = "holds"
    REFUTED = "refuted"
    EQUALITY = "equality"
    REVERSED = "reversed"


@dataclass(frozen=True)
class Verdict:
    """Result of a decision.

    On 0 < x < 1, ``REVERSED`` means the reverse inequality holds (and the
    stated one fails), ``REFUTED`` that neither direction holds; ``secondary``
    then carries the refutation of the other direction. ``expected`` is the
    direction predicted from the parity of n when dominance holds.
    """

    direction: Outcome
    certificate: Certificate
    dominance: DominanceReport
    build: DifferenceBuild
    region: str = GT1
    secondary: Optional[Certificate] = None
    expected: Optional[Outcome] = None

    @property
    def holds(self) -> bool:
        return self.direction in (Outcome.HOLDS, Outcome.EQUALITY)

    @property
    def multiplicity(self) -> Optional[int]:
        return getattr(self.certificate, "multiplicity", None)

    def witness_x(self, cert: Optional[Certificate] = None) -> Optional[Fraction]:
        """The refutation point in the original variable x (``t**scale``)."""
        cert = cert or self.certificate
        if not isinstance(cert, Refutation):
            return None
        t = cert.witness if cert.region == GT1 else 1 / cert.witness
        return t ** self.build.scale


class SpreadHint(NamedTuple):
    spread: Fraction


def necessary_spread_check(p, q) -> Optional[SpreadHint]:
    """Advisory early refutation from the second-order expansion of D at 1.

    With equal sums the first coefficient of D in powers of (x - 1) that can be
    non-zero is proportional to ``sum(q_j**2) - sum(p_j**2)``; a negative value
    makes D negative just to the right of 1.
    """
    inst = InequalityInstance.of(p, q)
    if not inst.sums_equal:
        return None
    spread = sum(e * e for e in inst.q) - sum(e * e for e in inst.p)
    return SpreadHint(spread) if spread < 0 else None


def decide(p, q, *, use_hint: bool = True) -> Verdict:
    """Decide the inequality on (1, inf). Dominance is reported but not required."""
    build = build_difference(p, q)
    dom = check_dominance(build.instance.p, build.instance.q)
    if build.D.is_zero():
        return Verdict(Outcome.EQUALITY, IdenticallyZero(), dom, build)
    hint = necessary_spread_check(build.instance.p, build.instance.q) if use_hint else None
    cert = certify_nonnegative(build.D, GT1, 1, skip_shift=hint is not None)
    direction = Outcome.REFUTED if isinstance(cert, Refutation) else Outcome.HOLDS
    return Verdict(direction, cert, dom, build)


def decide_unit_interval(p, q) -> Verdict:
    """Decide the inequality and its reverse on 0 < x < 1 (equal sums required)."""
    build = build_difference(p, q)
    inst = build.instance
    if not inst.sums_equal:
        raise UnequalSums(f"sums differ: {inst.p.total()} != {inst.q.total()}")
    dom = check_dominance(inst.p, inst.q)
    expected = None
    if dom.satisfied:
        same = reciprocal_direction(inst.n) is UnitDirection.SAME
        expected = Outcome.HOLDS if same else Outcome.REVERSED
    if build.D.is_zero():
        return Verdict(Outcome.EQUALITY, IdenticallyZero(), dom, build, UNIT, expected=expected)
    R = build.D.reverse()
    forward = certify_nonnegative(R, UNIT, 1)
    if not isinstance(forward, Refutation):
        return Verdict(Outcome.HOLDS, forward, dom, build, UNIT, expected=expected)
    backward = certify_nonnegative(-R, UNIT, -1)
    if not isinstance(backward, Refutation):
        return Verdict(Outcome.REVERSED, backward, dom, build, UNIT, forward, expected)
    return Verdict(Outcome.REFUTED, forward, dom, build, UNIT, backward, expected)
