"""The nine acceptance criteria, each at its stated tolerance.

Run with ``pytest tests/test_acceptance.py`` (one PASS/FAIL line per criterion
in the summary) or directly with ``python3 tests/test_acceptance.py``.
"""

import contextlib
import dataclasses
import io
import math
import random
import time
from collections import Counter
from fractions import Fraction as F
from functools import lru_cache

import sympy

from acceptance_log import record
from generators import majorized_int_pair, majorized_rational_pair
from prodineq.certify import (
    Outcome,
    Refutation,
    ShiftedNonnegative,
    SturmPositive,
    build_difference,
    decide,
    decide_unit_interval,
    verify_certificate,
)
from prodineq.cli import _certify_one, main
from prodineq.numeric import Comparison, ScanConfig, default_sweep, product_sides, scan_violation
from prodineq.poly import IntPoly, eval_rational, root_multiplicity_at_one
from prodineq.proof import build_tree, verify_tree
from prodineq.report import load_corpus
from prodineq.tuples import check_dominance, normalize

SEED = 20240917


def exact_sides(p, q, x):
    """Both sides straight from the definition, factor by factor."""
    lhs = math.prod(q, start=F(1)) * math.prod((x**e - 1 for e in p), start=F(1))
    rhs = math.prod(p, start=F(1)) * math.prod((x**e - 1 for e in q), start=F(1))
    return lhs, rhs


# --- shared suite runs ------------------------------------------------------------


@lru_cache(maxsize=None)
def corpus_run():
    fixtures = load_corpus()
    t0 = time.perf_counter()
    runs = []
    for fx in fixtures:
        verdict, rep = _certify_one(normalize(fx["p"]), normalize(fx["q"]), "gt1", fx["label"])
        runs.append((fx, verdict, rep))
    return runs, time.perf_counter() - t0


@lru_cache(maxsize=None)
def soundness_run():
    rng = random.Random(SEED)
    pairs = [majorized_int_pair(rng, rng.randint(1, 6), 20) for _ in range(1000)]
    pairs += [majorized_rational_pair(rng, rng.randint(1, 6)) for _ in range(200)]
    t0 = time.perf_counter()
    verdicts = [decide(p, q) for p, q in pairs]
    return pairs, verdicts, time.perf_counter() - t0


@lru_cache(maxsize=None)
def tree_run():
    rng = random.Random(SEED + 1)
    out = []
    for i in range(500):
        n = rng.randint(2, 6)
        p, q = majorized_int_pair(rng, n) if i % 4 else majorized_rational_pair(rng, min(n, 5))
        out.append(build_tree(p, q))
    return out


@lru_cache(maxsize=None)
def unit_run():
    rng = random.Random(SEED + 2)
    even, odd = [], []
    while len(even) < 100 or len(odd) < 100:
        n = rng.randint(2, 6)
        bucket = even if n % 2 == 0 else odd
        if len(bucket) >= 100:
            continue
        p, q = majorized_int_pair(rng, n, 12)
        if p == q:
            continue
        bucket.append((p, q, decide_unit_interval(p, q)))
    return even, odd


def telescopes_exactly(tree) -> bool:
    left, right = Counter(), Counter()
    cl = cr = F(1)
    for b in tree.base_cases:
        left += Counter(b.a)
        right += Counter(b.b)
        cl *= math.prod(b.b)
        cr *= math.prod(b.a)
    extra_l = left - Counter(tree.target.p)
    extra_r = right - Counter(tree.target.q)
    if extra_l != extra_r:
        return False
    if left - extra_l != Counter(tree.target.p) or right - extra_r != Counter(tree.target.q):
        return False
    c = math.prod(extra_l.elements(), start=F(1))
    return cl / c == math.prod(tree.target.q) and cr / c == math.prod(tree.target.p)


# --- criteria -------------------------------------------------------------------------


def criterion_1():
    runs, elapsed = corpus_run()
    ok = elapsed < 1.0
    bad = []
    for fx, verdict, rep in runs:
        good = rep.verdict == fx["expect"] and verify_certificate(verdict.build, verdict.certificate)
        if "reduced" in fx:
            good &= rep.reduced_coefficients == fx["reduced"]
        if fx["expect"] == "refuted":
            w = verdict.witness_x()
            lhs, rhs = exact_sides(verdict.build.instance.p, verdict.build.instance.q, w)
            good &= isinstance(w, F) and w > 1 and lhs > rhs
        if not good:
            bad.append(fx["label"])
    ok &= not bad and len(runs) == 8
    byl = {fx["label"]: rep for fx, _, rep in runs}
    ok &= byl["holds-595-1728"].reduced_coefficients == [595, 1728]
    ok &= byl["holds-48-385"].reduced_coefficients == [48, 385]
    ok &= not byl["n3-holds-without-dominance"].dominance["satisfied"]
    with contextlib.redirect_stdout(io.StringIO()):
        ok &= main(["certify", "--corpus"]) == 0
    return ok, f"fixture corpus, 8 instances, {elapsed * 1000:.0f} ms total, mismatches {bad or 'none'}"


def criterion_2():
    D = build_difference([2, 3, 7], [1, 5, 6]).D
    factors = [IntPoly((-1, 1)) ** 7, IntPoly((1, 1)), IntPoly((1, 1, 1)), IntPoly((2, 3, 2))]
    product = IntPoly((6,))
    for f in factors:
        product = product * f
    X = sympy.Symbol("x")
    ref = sympy.Poly(sympy.expand(6 * (X - 1) ** 7 * (X + 1) * (X**2 + X + 1) * (2 * X**2 + 3 * X + 2)), X)
    ref_coeffs = tuple(int(c) for c in reversed(ref.all_coeffs()))
    ok = D == product and D.coeffs == ref_coeffs
    return ok, f"difference polynomial equals 6(x-1)^7(x+1)(x^2+x+1)(2x^2+3x+2) coefficient-exactly (degree {D.degree})"


def criterion_3():
    pairs, verdicts, elapsed = soundness_run()
    dom = all(check_dominance(p, q).satisfied for p, q in pairs)
    bad = [pq for pq, v in zip(pairs, verdicts) if v.direction not in (Outcome.HOLDS, Outcome.EQUALITY)]
    ok = dom and not bad and elapsed < 120
    return ok, f"1000 integer + 200 rational dominance pairs, refuted {len(bad)}, {elapsed:.1f} s"


def criterion_4():
    trees = tree_run()
    bad = 0
    for t in trees:
        good = len(t.steps) == t.target.n - 1
        good &= all(check_dominance(s.residual_p, s.residual_q).satisfied for s in t.steps)
        good &= telescopes_exactly(t) and verify_tree(t)
        bad += not good
    return bad == 0, f"500 proof trees built and verified, failures {bad}"


def criterion_5():
    instances = []
    for fx, verdict, _ in corpus_run()[0]:
        instances.append((verdict.build.instance.n, verdict.build))
    for (p, q), v in zip(soundness_run()[0], soundness_run()[1]):
        instances.append((len(p), v.build))
    for t in tree_run():
        instances.append((t.target.n, build_difference(t.target.p, t.target.q)))
        for b in t.base_cases:
            instances.append((2, build_difference(b.a, b.b)))
    checked = 0
    low = 0
    for n, build in instances:
        if not build.instance.sums_equal or build.D.is_zero():
            continue
        checked += 1
        low += root_multiplicity_at_one(build.D)[0] < n + 1
    m23 = root_multiplicity_at_one(build_difference([2, 3, 7], [1, 5, 6]).D)[0]
    ok = low == 0 and m23 == 7 and checked > 1000
    return ok, f"{checked} equal-sum instances with multiplicity >= n+1 (violations {low}); 3-term counter-case m = {m23}"


def criterion_6():
    even, odd = unit_run()
    points = [F(k, 101) for k in range(1, 101)]
    bad = 0
    for group, want, sign in ((even, Outcome.HOLDS, 1), (odd, Outcome.REVERSED, -1)):
        for p, q, v in group:
            good = v.direction is want and v.expected is want
            good &= verify_certificate(v.build, v.certificate)
            # D in t = x^(1/L); (0, 1) maps to itself
            good &= all(sign * eval_rational(v.build.D, t) >= 0 for t in points)
            if v.build.scale == 1:
                lhs, rhs = exact_sides(p, q, F(1, 2))
                good &= (lhs <= rhs) if sign > 0 else (lhs >= rhs)
            bad += not good
    return bad == 0, f"{len(even)} even-n pairs hold and {len(odd)} odd-n pairs reverse on (0,1); 100-point exact sampling; failures {bad}"


def all_certificates():
    out = []
    for _, v, _ in corpus_run()[0]:
        out.append((v.build, v.certificate))
    for v in soundness_run()[1]:
        out.append((v.build, v.certificate))
    for t in tree_run():
        for b in t.base_cases:
            v = decide(b.a, b.b)
            out.append((v.build, v.certificate))
    for group in unit_run():
        for _, _, v in group:
            out.append((v.build, v.certificate))
            if v.secondary is not None:
                out.append((v.build, v.secondary))
    return out


def mutate(cert, rng):
    if isinstance(cert, Refutation):
        return dataclasses.replace(cert, witness=cert.witness + F(1, rng.randint(2, 50)))
    if isinstance(cert, ShiftedNonnegative):
        coeffs = list(cert.coefficients)
        i = rng.randrange(len(coeffs))
        coeffs[i] += rng.choice([-1, 1]) * rng.randint(1, 5)
        return dataclasses.replace(cert, coefficients=tuple(coeffs))
    if isinstance(cert, SturmPositive):
        return dataclasses.replace(cert, samples=tuple(s + 1000 for s in cert.samples))
    raise TypeError(cert)


def criterion_7():
    certs = all_certificates()
    failed = sum(not verify_certificate(b, c) for b, c in certs)
    rng = random.Random(SEED + 3)
    refutations = [bc for bc in certs if isinstance(bc[1], Refutation)]
    shifted = [bc for bc in certs if isinstance(bc[1], ShiftedNonnegative) and bc[1].coefficients]
    chosen = rng.sample(refutations, 50) + rng.sample(shifted, 50)
    undetected = sum(verify_certificate(b, mutate(c, rng)) for b, c in chosen)
    ok = failed == 0 and undetected == 0
    return ok, f"{len(certs)} emitted certificates verified (failures {failed}); 100 mutations, undetected {undetected}"


def criterion_8():
    rep = default_sweep(prec=256)
    ok = rep.ok and rep.points > 0
    return ok, f"{rep.points} constraint-filtered grid points at 256 bits, alerts {len(rep.alerts)}, inconclusive {rep.inconclusive}"


def criterion_9():
    bad = []
    runs, _ = corpus_run()
    n_points = 10_000
    for fx, verdict, _ in runs:
        p, q = verdict.build.instance.p, verdict.build.instance.q
        if verdict.direction is Outcome.REFUTED:
            w = verdict.witness_x()
            sides = product_sides(list(p), list(q), w)
            agree = sides.classify() is Comparison.VIOLATED
            hit = scan_violation(list(p), list(q), ScanConfig(1, 2, 1000))
            if hit is not None:
                m, e = hit.x.man_exp
                agree &= eval_rational(verdict.build.D, F(int(m)) * F(2) ** int(e)) < 0
            if not agree:
                bad.append(fx["label"])
        else:
            for i in range(1, n_points + 1):
                x = 1 + F(99 * i, n_points)
                lhs, rhs = exact_sides(p, q, x)
                if lhs > rhs:
                    bad.append(fx["label"])
                    break
    return not bad, f"numeric sign agrees at every exact witness; 10^4-point exact sampling on (1,100] clean; disagreements {bad or 'none'}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8, criterion_9]


def _check(i):
    ok, detail = CRITERIA[i - 1]()
    record(i, ok, detail)
    assert ok, detail


def test_criterion_1_fixture_corpus():
    _check(1)


def test_criterion_2_factorization_identity():
    _check(2)


def test_criterion_3_soundness_suite():
    _check(3)


def test_criterion_4_proof_trees():
    _check(4)


def test_criterion_5_multiplicity():
    _check(5)


def test_criterion_6_unit_interval_parity():
    _check(6)


def test_criterion_7_certificate_verification():
    _check(7)


def test_criterion_8_numeric_sweep():
    _check(8)


def test_criterion_9_oracle_cross_check():
    _check(9)


if __name__ == "__main__":
    for i, crit in enumerate(CRITERIA, 1):
        ok, detail = crit()
        record(i, ok, detail)
