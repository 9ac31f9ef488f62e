"""Instance and report documents: JSON-native views of instances, verdicts and proof trees."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Any, Optional

from .certify import (
    Certificate,
    IdenticallyZero,
    Refutation,
    ShiftedNonnegative,
    SturmPositive,
    Verdict,
)
from .errors import InputError
from .proof import ProofTree
from .tuples import DominanceReport, ExponentTuple, normalize


def fmt(x: Fraction) -> str:
    return str(Fraction(x))


@dataclass(frozen=True)
class InstanceDocument:
    p: tuple[str, ...]
    q: tuple[str, ...]
    label: Optional[str] = None

    @classmethod
    def from_dict(cls, data: dict) -> "InstanceDocument":
        try:
            p, q = data["p"], data["q"]
        except (KeyError, TypeError) as exc:
            raise InputError("instance document needs 'p' and 'q'") from exc
        if isinstance(p, str):
            p = p.split()
        if isinstance(q, str):
            q = q.split()
        return cls(tuple(str(v) for v in p), tuple(str(v) for v in q), data.get("label"))

    @classmethod
    def from_json(cls, text: str) -> "InstanceDocument":
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON instance: {exc}") from exc

    def tuples(self) -> tuple[ExponentTuple, ExponentTuple]:
        return normalize(self.p), normalize(self.q)

    def to_dict(self) -> dict:
        return {"p": list(self.p), "q": list(self.q), "label": self.label}


def load_corpus() -> list[dict]:
    text = resources.files("prodineq").joinpath("data/corpus.json").read_text()
    return json.loads(text)


def dominance_dict(report: DominanceReport) -> dict:
    return {
        "satisfied": report.satisfied,
        "sums_equal": report.sums_equal,
        "total_p": fmt(report.total_p),
        "total_q": fmt(report.total_q),
        "first_violation": report.first_violation,
        "levels": [
            {
                "k": c.k,
                "suffix_p": fmt(c.suffix_p),
                "suffix_q": fmt(c.suffix_q),
                "satisfied": c.satisfied,
            }
            for c in report.level_checks
        ],
    }


def certificate_dict(cert: Certificate, verdict: Verdict) -> dict:
    out: dict[str, Any] = {"variant": type(cert).__name__}
    if isinstance(cert, IdenticallyZero):
        return out
    out["region"] = cert.region
    out["sign"] = cert.sign
    if isinstance(cert, Refutation):
        out["witness"] = fmt(cert.witness)
        out["witness_x"] = fmt(verdict.witness_x(cert))
        out["value"] = fmt(cert.value)
        return out
    out["multiplicity"] = cert.multiplicity
    if isinstance(cert, ShiftedNonnegative):
        out["shifted_terms"] = len(cert.coefficients)
    elif isinstance(cert, SturmPositive):
        out["root_intervals"] = [[fmt(a), fmt(b)] for a, b in cert.root_intervals]
        out["samples"] = [fmt(s) for s in cert.samples]
    return out


def tree_steps(tree: ProofTree) -> list[dict]:
    return [
        {
            "level": s.level,
            "k": s.k,
            "p1": fmt(s.p1),
            "qk": fmt(s.qk),
            "qk1": fmt(s.qk1),
            "qprime": fmt(s.qprime),
        }
        for s in tree.steps
    ]


@dataclass(frozen=True)
class ReportDocument:
    instance: dict
    region: str
    verdict: str
    dominance: dict
    certificate: dict
    reduced_coefficients: list
    raw_coefficients: list
    scale: int
    witness: Optional[str] = None
    secondary: Optional[dict] = None
    expected: Optional[str] = None
    proof_tree: Optional[list] = None
    timing_ms: float = 0.0
    extra: dict = field(default_factory=dict)

    @classmethod
    def from_verdict(
        cls,
        verdict: Verdict,
        label: Optional[str] = None,
        tree: Optional[ProofTree] = None,
        timing_ms: float = 0.0,
    ) -> "ReportDocument":
        inst = verdict.build.instance
        witness = verdict.witness_x()
        return cls(
            instance={"p": [fmt(e) for e in inst.p], "q": [fmt(e) for e in inst.q], "label": label},
            region=verdict.region,
            verdict=verdict.direction.value,
            dominance=dominance_dict(verdict.dominance),
            certificate=certificate_dict(verdict.certificate, verdict),
            reduced_coefficients=list(inst.reduced),
            raw_coefficients=[fmt(inst.coeff_left), fmt(inst.coeff_right)],
            scale=verdict.build.scale,
            witness=None if witness is None else fmt(witness),
            secondary=None
            if verdict.secondary is None
            else certificate_dict(verdict.secondary, verdict),
            expected=None if verdict.expected is None else verdict.expected.value,
            proof_tree=None if tree is None else tree_steps(tree),
            timing_ms=timing_ms,
        )

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data: dict) -> "ReportDocument":
        return cls(**data)

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        return cls.from_dict(json.loads(text))
