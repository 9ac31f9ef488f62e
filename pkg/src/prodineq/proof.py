"""Inductive proof trees built from two-term base inequalities.

A dominance-satisfying pair of length n is reduced by extracting the smallest
``p_1``, locating a pivot ``q_k <= p_1 <= q_{k+1}`` and replacing
``(q_k, q_{k+1})`` with ``q' = q_k + q_{k+1} - p_1``. Each reduction emits the
two-term inequality

    q_k q_{k+1} (x^{p_1} - 1)(x^{q'} - 1) <= p_1 q' (x^{q_k} - 1)(x^{q_{k+1}} - 1)

and leaves a dominance-satisfying pair of length n - 1. Multiplying the n - 1
emitted inequalities and cancelling the synthesized factors recovers the
target inequality.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .certify import Outcome, decide, verify_certificate
from .errors import BaseCaseRefuted, DominanceLost, NotDominant, PivotUnavailable
from .tuples import ExponentTuple, InequalityInstance, as_tuple, check_dominance, normalize


@dataclass(frozen=True)
class BaseCase:
    """``b1*b2*(x^a1 - 1)(x^a2 - 1) <= a1*a2*(x^b1 - 1)(x^b2 - 1)``."""

    a: tuple[Fraction, Fraction]
    b: tuple[Fraction, Fraction]

    def hypotheses_hold(self) -> bool:
        (a1, a2), (b1, b2) = self.a, self.b
        return (
            0 < a1 <= a2
            and 0 < b1 <= b2
            and a1 + a2 == b1 + b2
            and a2 <= b2
            and b1 <= a1
        )

    @property
    def instance(self) -> InequalityInstance:
        return InequalityInstance.of(self.a, self.b)

    def is_trivial(self) -> bool:
        return self.a == self.b


@dataclass(frozen=True)
class ReductionStep:
    level: int
    k: int
    p1: Fraction
    qk: Fraction
    qk1: Fraction
    qprime: Fraction
    base: BaseCase
    residual_p: ExponentTuple
    residual_q: ExponentTuple


@dataclass(frozen=True)
class ProofTree:
    target: InequalityInstance
    steps: tuple[ReductionStep, ...]

    @property
    def base_cases(self) -> tuple[BaseCase, ...]:
        return tuple(s.base for s in self.steps)


def select_pivot(p1, q) -> int:
    """Largest 1-based k <= n-1 with q_k <= p1."""
    q = as_tuple(q)
    p1 = Fraction(p1)
    if len(q) < 2:
        raise PivotUnavailable("pivot needs at least two q entries")
    if p1 < q[0]:
        raise PivotUnavailable(f"p1={p1} is below q1={q[0]}")
    k = 1
    for i in range(1, len(q) - 1):
        if q[i] <= p1:
            k = i + 1
    return k


def reduce(p, q) -> ReductionStep:
    """One pivot reduction; residual dominance is re-verified exactly."""
    p, q = as_tuple(p), as_tuple(q)
    if not check_dominance(p, q).satisfied:
        raise NotDominant("reduction needs the suffix-sum conditions")
    n = len(p)
    p1 = p[0]
    k = select_pivot(p1, q)
    qk, qk1 = q[k - 1], q[k]
    qprime = qk + qk1 - p1
    if not (qk <= p1 <= qk1 and qk <= qprime <= qk1):
        raise DominanceLost(f"pivot k={k} does not bracket p1={p1}")
    base = BaseCase(tuple(sorted((p1, qprime))), (qk, qk1))
    residual_p = ExponentTuple(p.entries[1:])
    residual_q = normalize([*q.entries[: k - 1], qprime, *q.entries[k + 1 :]])
    if not check_dominance(residual_p, residual_q).satisfied:
        raise DominanceLost(f"residual {residual_p} vs {residual_q} lost dominance")
    return ReductionStep(n, k, p1, qk, qk1, qprime, base, residual_p, residual_q)


def build_tree(p, q) -> ProofTree:
    p, q = as_tuple(p), as_tuple(q)
    target = InequalityInstance(p, q)
    if not check_dominance(p, q).satisfied:
        raise NotDominant("proof trees exist only for dominance-satisfying pairs")
    steps = []
    cur_p, cur_q = p, q
    while len(cur_p) >= 2:
        step = reduce(cur_p, cur_q)
        steps.append(step)
        cur_p, cur_q = step.residual_p, step.residual_q
    for step in steps:
        verdict = decide(step.base.a, step.base.b)
        if not verdict.holds:
            raise BaseCaseRefuted(f"base case {step.base} was refuted")
    return ProofTree(target, tuple(steps))


def _telescopes(tree: ProofTree) -> bool:
    if not tree.steps:
        return tree.target.p == tree.target.q
    left, right = Counter(), Counter()
    coef_left = coef_right = Fraction(1)
    for base in tree.base_cases:
        left.update(base.a)
        right.update(base.b)
        coef_left *= base.b[0] * base.b[1]
        coef_right *= base.a[0] * base.a[1]
    target_left, target_right = Counter(tree.target.p), Counter(tree.target.q)
    if target_left - left or target_right - right:
        return False
    cancelled = left - target_left
    if cancelled != right - target_right:
        return False
    # each cancelled factor (x^c - 1) arrives with the scalar c on both sides
    scalar = math.prod(cancelled.elements(), start=Fraction(1))
    return (
        coef_left == tree.target.coeff_left * scalar
        and coef_right == tree.target.coeff_right * scalar
    )


def verify_tree(tree: ProofTree) -> bool:
    """Check hypotheses, certify every base case and confirm exact telescoping."""
    if len(tree.steps) != tree.target.n - 1:
        return False
    for step in tree.steps:
        base = step.base
        if not base.hypotheses_hold():
            return False
        if step.qprime != step.qk + step.qk1 - step.p1:
            return False
        if sorted(base.a) != sorted((step.p1, step.qprime)) or base.b != (step.qk, step.qk1):
            return False
        verdict = decide(base.a, base.b)
        if verdict.direction not in (Outcome.HOLDS, Outcome.EQUALITY):
            return False
        if not verify_certificate(verdict.build, verdict.certificate):
            return False
    return _telescopes(tree)
