"""Command-line front end.

Exit codes: 0 holds / equality / satisfied, 1 refuted, 2 precondition
unsatisfied, 3 input error, 4 internal verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Optional

import mpmath

from . import numeric
from .certify import Outcome, decide, decide_unit_interval, verify_certificate
from .errors import ConstraintViolation, InputError, PrecisionExhausted, UnequalSums
from .proof import build_tree, verify_tree
from .report import InstanceDocument, ReportDocument, dominance_dict, fmt, load_corpus, tree_steps
from .tuples import InequalityInstance, check_dominance, integerize, to_rational

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_PRECONDITION = 2
EXIT_INPUT = 3
EXIT_INTERNAL = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _out(args, text: str = "", payload=None) -> None:
    if args.json:
        if payload is not None:
            print(json.dumps(payload, indent=2))
    else:
        print(text)


def _load_instance(args) -> InstanceDocument:
    if getattr(args, "file", None):
        with open(args.file) as fh:
            doc = InstanceDocument.from_json(fh.read())
    else:
        if args.p is None or args.q is None:
            raise InputError("give --p and --q, or --file")
        doc = InstanceDocument(tuple(args.p.split()), tuple(args.q.split()), args.label)
    doc.tuples()
    return doc


def _render_dominance(d: dict) -> str:
    lines = [f"sums: {d['total_p']} vs {d['total_q']} ({'equal' if d['sums_equal'] else 'UNEQUAL'})"]
    for lvl in d["levels"]:
        mark = "ok" if lvl["satisfied"] else "VIOLATED"
        lines.append(f"  k={lvl['k']}: {lvl['suffix_p']} <= {lvl['suffix_q']}  {mark}")
    lines.append("dominance: " + ("satisfied" if d["satisfied"] else "not satisfied"))
    return "\n".join(lines)


def _render_report(r: ReportDocument) -> str:
    inst = r.instance
    head = f"p = ({', '.join(inst['p'])})  q = ({', '.join(inst['q'])})"
    if inst.get("label"):
        head = f"[{inst['label']}] " + head
    region = "x > 1" if r.region == "gt1" else "0 < x < 1"
    a, b = r.reduced_coefficients
    lines = [
        head,
        f"coefficients: {r.raw_coefficients[0]}:{r.raw_coefficients[1]} (reduced {a}:{b})",
        f"verdict on {region}: {r.verdict}",
        f"certificate: {r.certificate['variant']}"
        + (f", multiplicity at 1 = {r.certificate['multiplicity']}" if "multiplicity" in r.certificate else ""),
    ]
    if r.witness is not None:
        lines.append(f"witness: x = {r.witness} (value {r.certificate.get('value', '?')})")
    if r.expected is not None:
        lines.append(f"expected from parity of n: {r.expected}")
    if r.proof_tree:
        lines.append(_render_steps(r.proof_tree))
    return "\n".join(lines)


def _render_steps(steps: list[dict]) -> str:
    lines = ["proof tree:"]
    for s in steps:
        lines.append(
            f"  level {s['level']}: k={s['k']}, p1={s['p1']}, (q_k, q_k+1)=({s['qk']}, {s['qk1']}), "
            f"q'={s['qprime']}  base ({s['p1']}, {s['qprime']}) vs ({s['qk']}, {s['qk1']})"
        )
    return "\n".join(lines)


def _verdict_exit(verdict) -> int:
    return EXIT_OK if verdict.direction in (Outcome.HOLDS, Outcome.EQUALITY) else EXIT_REFUTED


# --- commands -----------------------------------------------------------------


def cmd_check(args) -> int:
    doc = _load_instance(args)
    p, q = doc.tuples()
    rep = check_dominance(p, q)
    d = dominance_dict(rep)
    _out(args, _render_dominance(d), {"instance": doc.to_dict(), "dominance": d})
    return EXIT_OK if rep.satisfied else EXIT_PRECONDITION


def _certify_one(p, q, region: str, label=None, with_tree=False):
    t0 = time.perf_counter()
    verdict = decide_unit_interval(p, q) if region == "unit" else decide(p, q)
    if not verify_certificate(verdict.build, verdict.certificate):
        raise AssertionError("emitted certificate failed verification")
    tree = None
    if with_tree and verdict.dominance.satisfied:
        tree = build_tree(p, q)
    ms = (time.perf_counter() - t0) * 1000
    return verdict, ReportDocument.from_verdict(verdict, label, tree, ms)


def cmd_certify(args) -> int:
    if args.corpus:
        return _run_corpus(args)
    doc = _load_instance(args)
    p, q = doc.tuples()
    try:
        verdict, rep = _certify_one(p, q, args.region, doc.label, args.proof)
    except UnequalSums as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except AssertionError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    _out(args, _render_report(rep), rep.to_dict())
    return _verdict_exit(verdict)


def _run_corpus(args) -> int:
    failures = 0
    reports = []
    for fx in load_corpus():
        doc = InstanceDocument.from_dict(fx)
        p, q = doc.tuples()
        try:
            _, rep = _certify_one(p, q, "gt1", doc.label)
        except AssertionError:
            failures += 1
            continue
        ok = rep.verdict == fx["expect"]
        if "reduced" in fx:
            ok = ok and rep.reduced_coefficients == fx["reduced"]
        failures += not ok
        reports.append(rep.to_dict())
        if not args.json:
            a, b = rep.reduced_coefficients
            extra = f" witness x={rep.witness}" if rep.witness else ""
            print(
                f"{'PASS' if ok else 'FAIL'}  {doc.label:<28} {rep.verdict:<9} "
                f"{a}:{b}{extra}  ({rep.timing_ms:.1f} ms)"
            )
    if args.json:
        print(json.dumps(reports, indent=2))
    return EXIT_OK if not failures else EXIT_INTERNAL


def cmd_prove(args) -> int:
    doc = _load_instance(args)
    p, q = doc.tuples()
    if not check_dominance(p, q).satisfied:
        print(
            "dominance conditions fail: no proof tree; use `certify` to decide the inequality",
            file=sys.stderr,
        )
        return EXIT_PRECONDITION
    tree = build_tree(p, q)
    ok = verify_tree(tree)
    steps = tree_steps(tree)
    _out(
        args,
        _render_steps(steps) + f"\nverified: {ok}",
        {"instance": doc.to_dict(), "proof_tree": steps, "verified": ok},
    )
    return EXIT_OK if ok else EXIT_INTERNAL


def cmd_refute(args) -> int:
    doc = _load_instance(args)
    p, q = doc.tuples()
    verdict, rep = _certify_one(p, q, "gt1", doc.label)
    if verdict.direction is Outcome.REFUTED:
        cert = verdict.certificate
        text = (
            f"counterexample: x = {rep.witness}\n"
            f"  (t = {fmt(cert.witness)} with x = t^{verdict.build.scale}; scaled difference D(t) = {fmt(cert.value)} < 0)"
        )
        _out(args, text, rep.to_dict())
        return EXIT_REFUTED
    _out(args, "no counterexample exists on (1, inf)", rep.to_dict())
    return EXIT_OK


def _relation(a, b) -> str:
    return "<" if a < b else ("=" if a == b else ">")


def exact_root(x: Fraction, n: int) -> Optional[Fraction]:
    """The rational n-th root of x > 0, if there is one."""

    def iroot(v: int) -> Optional[int]:
        if v < 2:
            return v
        r = 1 << -(-v.bit_length() // n)  # >= the true root
        while True:
            nr = ((n - 1) * r + v // r ** (n - 1)) // n
            if nr >= r:
                break
            r = nr
        return r if r ** n == v else None

    a, b = iroot(x.numerator), iroot(x.denominator)
    return None if a is None or b is None else Fraction(a, b)


def evaluate_instance(p, q, x: Fraction, prec: int = numeric.DEFAULT_PREC) -> dict:
    inst = InequalityInstance.of(p, q)
    p_int, q_int, scale = integerize(inst.p, inst.q)
    t = x if scale == 1 else exact_root(x, scale)
    if t is not None:
        left = inst.coeff_left
        right = inst.coeff_right
        for e in p_int:
            left *= t ** e - 1
        for e in q_int:
            right *= t ** e - 1
        return {"exact": True, "left": fmt(left), "right": fmt(right), "relation": _relation(left, right)}
    sides = numeric.product_sides(list(inst.p), list(inst.q), x, prec)
    cmp = sides.classify()
    relation = {"holds": "<", "violated": ">", "equal": "~"}[cmp.value]
    with numeric.precision(prec):
        return {
            "exact": False,
            "left": mpmath.nstr(sides.lhs, 40),
            "right": mpmath.nstr(sides.rhs, 40),
            "error_bound": mpmath.nstr(sides.error, 5),
            "relation": relation,
        }


def cmd_eval(args) -> int:
    doc = _load_instance(args)
    x = to_rational(args.x)
    if x <= 0:
        raise InputError("x must be positive")
    p, q = doc.tuples()
    res = evaluate_instance(p, q, x)
    res["x"] = fmt(x)
    text = f"left  = {res['left']}\nright = {res['right']}\nleft {res['relation']} right"
    if not res["exact"]:
        text += f"  (numeric, error bound {res['error_bound']})"
    _out(args, text, res)
    return EXIT_OK


def cmd_furuta(args) -> int:
    try:
        params = numeric.FurutaParams(to_rational(args.p), to_rational(args.q), to_rational(args.r))
    except ConstraintViolation as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.sweep:
        rep = numeric.default_sweep(args.prec)
        with numeric.precision(args.prec):
            payload = {
                "points": rep.points,
                "min_gap": mpmath.nstr(rep.min_gap, 10),
                "min_location": [str(v) for v in rep.min_location[:3]] + [mpmath.nstr(rep.min_location[3], 10)],
                "inconclusive": rep.inconclusive,
                "alerts": len(rep.alerts),
            }
        text = (
            f"{rep.points} grid points, min(rhs - lhs) = {payload['min_gap']} at "
            f"(p, q, r, x) = {tuple(payload['min_location'])}; alerts: {len(rep.alerts)}, "
            f"inconclusive: {rep.inconclusive}"
        )
        _out(args, text, payload)
        return EXIT_OK if rep.ok else EXIT_REFUTED
    if args.x is None:
        raise InputError("give --x or --sweep")
    x = to_rational(args.x)
    if x <= 0:
        raise InputError("x must be positive")
    try:
        sides = numeric.furuta_sides(params, x, args.prec)
    except PrecisionExhausted as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    cmp = sides.classify()
    with numeric.precision(args.prec):
        payload = {
            "lhs": mpmath.nstr(sides.lhs, 30),
            "rhs": mpmath.nstr(sides.rhs, 30),
            "error_bound": mpmath.nstr(sides.error, 5),
            "comparison": cmp.value,
        }
    _out(args, f"lhs = {payload['lhs']}\nrhs = {payload['rhs']}\n{cmp.value} (error bound {payload['error_bound']})", payload)
    return EXIT_REFUTED if cmp is numeric.Comparison.VIOLATED else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="prodineq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def instance_cmd(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--p", help='exponents, e.g. "6 8 8 9" or "1/2 3/2"')
        sp.add_argument("--q", help="exponents of the right-hand product")
        sp.add_argument("--file", help="JSON instance document {p, q, label}")
        sp.add_argument("--label")
        sp.add_argument("--json", action="store_true")
        return sp

    instance_cmd("check", "check the suffix-sum dominance conditions").set_defaults(func=cmd_check)
    sp = instance_cmd("certify", "decide the inequality and emit a certificate")
    sp.add_argument("--region", choices=["gt1", "unit"], default="gt1")
    sp.add_argument("--proof", action="store_true", help="attach a proof tree when dominance holds")
    sp.add_argument("--corpus", action="store_true", help="run the bundled fixture corpus")
    sp.set_defaults(func=cmd_certify)
    instance_cmd("prove", "build and verify an inductive proof tree").set_defaults(func=cmd_prove)
    instance_cmd("refute", "search for an exact counterexample on x > 1").set_defaults(func=cmd_refute)
    sp = instance_cmd("eval", "evaluate both sides at a point")
    sp.add_argument("--x", required=True)
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("furuta", help="numeric check of the fractional-power inequality")
    sp.add_argument("--p", default="1")
    sp.add_argument("--q", default="1")
    sp.add_argument("--r", default="0")
    sp.add_argument("--x")
    sp.add_argument("--sweep", action="store_true")
    sp.add_argument("--prec", type=int, default=numeric.DEFAULT_PREC)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_furuta)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, OSError) as exc:
        print(f"input error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
