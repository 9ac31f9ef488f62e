import json
import subprocess
import sys
from fractions import Fraction as F

import pytest

from prodineq.cli import evaluate_instance, exact_root, main
from prodineq.report import InstanceDocument, ReportDocument


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


# --- check --------------------------------------------------------------------


def test_check_satisfied(capsys):
    code, out, _ = run(capsys, "check", "--p", "6 8 8 9", "--q", "2 5 7 17")
    assert code == 0
    assert "25 <= 29" in out and "dominance: satisfied" in out


def test_check_unsatisfied(capsys):
    code, doc = run_json(capsys, "check", "--p", "1 5 5 5 5", "--q", "3 3 3 3 9")
    assert code == 2
    d = doc["dominance"]
    assert d["first_violation"] == 2
    assert (d["levels"][0]["suffix_p"], d["levels"][0]["suffix_q"]) == ("20", "18")


def test_decimal_strings_are_exact(capsys):
    code, doc = run_json(capsys, "check", "--p", "1.5 2.5", "--q", "1 3")
    assert code == 0 and doc["dominance"]["total_p"] == "4"


def test_check_bad_input(capsys):
    code, _, err = run(capsys, "check", "--p", "2 0 3", "--q", "1 2 3")
    assert code == 3 and "NonPositiveExponent" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "--p", "1 2", "--q", "3"],
        ["check", "--p", "1 x", "--q", "1 2"],
        ["check", "--p", "1/0", "--q", "1"],
        ["check", "--p", "1 2"],
        ["check", "--file", "/nonexistent/instance.json"],
        ["nonsense"],
        ["certify", "--region", "middle", "--p", "1", "--q", "1"],
    ],
)
def test_input_errors_exit_3(capsys, argv):
    try:
        code = main(argv)
    except SystemExit as exc:  # argparse usage errors
        code = exc.code
    assert code == 3


# --- certify --------------------------------------------------------------------


def test_certify_five_term_48_385(capsys):
    code, doc = run_json(capsys, "certify", "--p", "2 3 5 7 11", "--q", "1 1 4 4 18")
    assert code == 0
    assert doc["verdict"] == "holds"
    assert doc["reduced_coefficients"] == [48, 385]


def test_certify_raw_and_reduced_coefficients(capsys):
    code, out, _ = run(capsys, "certify", "--p", "6 8 8 9", "--q", "2 5 7 17")
    assert code == 0 and "1190:3456 (reduced 595:1728)" in out


def test_certify_refuted(capsys):
    code, doc = run_json(capsys, "certify", "--p", "2 2 2 11 11", "--q", "1 1 6 8 12")
    assert code == 1
    assert doc["verdict"] == "refuted"
    assert doc["certificate"]["variant"] == "Refutation"
    assert F(doc["witness"]) > 1


def test_certify_equality(capsys):
    code, doc = run_json(capsys, "certify", "--p", "3 4", "--q", "3 4")
    assert code == 0 and doc["verdict"] == "equality"


def test_certify_unit_region(capsys):
    code, doc = run_json(capsys, "certify", "--region", "unit", "--p", "2 2", "--q", "1 3")
    assert code == 0 and doc["verdict"] == "holds" and doc["region"] == "unit"
    code, doc = run_json(capsys, "certify", "--region", "unit", "--p", "2 3 4", "--q", "1 3 5")
    assert code == 1 and doc["verdict"] == "reversed" and doc["expected"] == "reversed"


def test_certify_unit_needs_equal_sums(capsys):
    code, _, err = run(capsys, "certify", "--region", "unit", "--p", "2 3", "--q", "1 3")
    assert code == 2 and "precondition" in err


def test_certify_with_proof(capsys):
    code, doc = run_json(capsys, "certify", "--proof", "--p", "2 3 4", "--q", "1 3 5")
    assert code == 0
    assert [s["qprime"] for s in doc["proof_tree"]] == ["2", "4"]


def test_certify_from_file(capsys, tmp_path):
    path = tmp_path / "inst.json"
    path.write_text(json.dumps({"p": ["1/2", "3/2"], "q": "1/3 5/3", "label": "halves"}))
    code, doc = run_json(capsys, "certify", "--file", str(path))
    assert code == 0
    assert doc["instance"]["label"] == "halves"
    assert doc["scale"] == 6


def test_certify_bad_file(capsys, tmp_path):
    path = tmp_path / "inst.json"
    path.write_text("{not json")
    code, _, _ = run(capsys, "certify", "--file", str(path))
    assert code == 3
    path.write_text(json.dumps({"p": [1]}))
    code, _, _ = run(capsys, "certify", "--file", str(path))
    assert code == 3


def test_corpus(capsys):
    code, out, _ = run(capsys, "certify", "--corpus")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 8 and all(line.startswith("PASS") for line in lines)


def test_corpus_json(capsys):
    code, docs = run_json(capsys, "certify", "--corpus")
    assert code == 0
    assert [d["verdict"] for d in docs] == ["holds", "holds"] + ["refuted"] * 5 + ["holds"]


# --- report documents -------------------------------------------------------------


def test_report_round_trip(capsys):
    for argv in (["--p", "2 2 8 8", "--q", "1 5 5 9"], ["--p", "2 3 4", "--q", "1 3 5", "--proof"]):
        code, doc = run_json(capsys, "certify", *argv)
        rep = ReportDocument.from_json(json.dumps(doc))
        assert rep.to_dict() == doc
        assert ReportDocument.from_json(rep.to_json()) == rep
    for key in ("verdict", "certificate", "witness", "dominance", "proof_tree", "reduced_coefficients"):
        assert key in doc


def test_instance_document_round_trip():
    doc = InstanceDocument.from_json('{"p": "6 8 8 9", "q": ["2", "5", "7", "17"], "label": "a"}')
    assert InstanceDocument.from_dict(doc.to_dict()) == doc


@pytest.mark.parametrize(
    "p,q",
    [("2 2 8 8", "1 5 5 9"), ("2 2 3 3 10", "1 1 4 6 8"), ("1/2 2", "1 3/2"), ("1 4", "2 3")],
)
def test_witness_feeds_back_through_eval(capsys, p, q):
    code, doc = run_json(capsys, "refute", "--p", p, "--q", q)
    assert code == 1
    code, res = run_json(capsys, "eval", "--p", p, "--q", q, "--x", doc["witness"])
    assert code == 0
    assert res["exact"] is True
    assert F(res["left"]) > F(res["right"]) and res["relation"] == ">"


# --- prove / refute ------------------------------------------------------------


def test_prove_small(capsys):
    code, doc = run_json(capsys, "prove", "--p", "2 3 4", "--q", "1 3 5")
    assert code == 0 and doc["verified"] and len(doc["proof_tree"]) == 2


def test_prove_without_dominance(capsys):
    code, _, err = run(capsys, "prove", "--p", "2 3 7", "--q", "1 5 6")
    assert code == 2 and "certify" in err


def test_prove_trivial(capsys):
    code, doc = run_json(capsys, "prove", "--p", "1 2", "--q", "1 2")
    assert code == 0 and len(doc["proof_tree"]) == 1


@pytest.mark.parametrize("p,q", [("2 2 3 3 10", "1 1 4 6 8"), ("2 2 9 9 9", "1 5 5 10 10")])
def test_refute_finds_witness(capsys, p, q):
    code, out, _ = run(capsys, "refute", "--p", p, "--q", q)
    assert code == 1 and "counterexample: x =" in out


def test_refute_none(capsys):
    code, out, _ = run(capsys, "refute", "--p", "2 2", "--q", "1 3")
    assert code == 0 and "no counterexample" in out


# --- eval ------------------------------------------------------------------------


def test_eval_small(capsys):
    code, res = run_json(capsys, "eval", "--p", "2 2", "--q", "1 3", "--x", "2")
    assert code == 0 and (res["left"], res["right"]) == ("27", "28")


def test_eval_at_one(capsys):
    code, res = run_json(capsys, "eval", "--p", "2 3 5 7 11", "--q", "1 1 4 4 18", "--x", "1")
    assert (res["left"], res["right"]) == ("0", "0")


def test_eval_four_term_595_1728(capsys):
    code, res = run_json(capsys, "eval", "--p", "6 8 8 9", "--q", "2 5 7 17", "--x", "2")
    left = 1190 * (2**6 - 1) * (2**8 - 1) ** 2 * (2**9 - 1)
    right = 3456 * (2**2 - 1) * (2**5 - 1) * (2**7 - 1) * (2**17 - 1)
    assert (F(res["left"]), F(res["right"])) == (left, right)
    assert left <= right


def test_eval_rejects_nonpositive_x(capsys):
    code, _, _ = run(capsys, "eval", "--p", "2", "--q", "2", "--x", "0")
    assert code == 3


def test_eval_rational_exponents():
    exact_res = evaluate_instance(["1/2", "2"], ["1", "3/2"], F(9, 4))
    assert exact_res["exact"]
    num = evaluate_instance(["1/2", "2"], ["1", "3/2"], F(2))
    assert not num["exact"] and "error_bound" in num


def test_exact_root():
    assert exact_root(F(27, 8), 3) == F(3, 2)
    assert exact_root(F(2), 2) is None
    assert exact_root(F(1, 4), 2) == F(1, 2)
    assert exact_root(F(10**40), 4) == 10**10


# --- furuta ------------------------------------------------------------------------


def test_furuta_point(capsys):
    code, res = run_json(capsys, "furuta", "--p", "2", "--q", "2", "--r", "1", "--x", "4")
    assert code == 0 and res["comparison"] == "holds"
    assert res["lhs"].startswith("148.49") and res["rhs"].startswith("189")


def test_furuta_identity(capsys):
    code, res = run_json(capsys, "furuta", "--p", "1", "--q", "1", "--r", "0", "--x", "7/3")
    assert code == 0 and res["comparison"] == "equal"


def test_furuta_constraint_exit(capsys):
    code, _, err = run(capsys, "furuta", "--p", "5", "--q", "1", "--r", "0", "--x", "2")
    assert code == 3 and "exceeds" in err


def test_furuta_needs_x(capsys):
    code, _, _ = run(capsys, "furuta", "--p", "1", "--q", "1")
    assert code == 3


def test_furuta_sweep(capsys):
    code, res = run_json(capsys, "furuta", "--sweep")
    assert code == 0 and res["alerts"] == 0 and res["points"] > 0


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "prodineq", "check", "--p", "2 2 8 8", "--q", "1 5 5 9"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2
    assert "k=3: 16 <= 14  VIOLATED" in proc.stdout
