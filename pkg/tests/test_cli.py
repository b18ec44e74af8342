import json
import subprocess
import sys

import pytest

from bfcalc.cli import run
from bfcalc.rewrite import Demonstration, position_demonstration


def out(capsys, argv):
    code = run(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_eval_marking_example(capsys):
    code, text, _ = out(capsys, ["eval", "[[[[[ ]]]]]"])
    assert code == 0 and text.strip() == "1"


def test_eval_nms_annotation(capsys):
    code, text, _ = out(capsys, ["eval", "[[[[[ ]]]]]", "--method", "nms"])
    assert code == 0
    assert text.splitlines() == ["1", "[[[[[0] 1] 2] 3] 0] 1"]


def test_eval_json(capsys):
    code, text, _ = out(capsys, ["eval", "[A] B", "--assign", "A=1", "--assign", "B=3", "--json"])
    data = json.loads(text)
    assert code == 0
    assert data["value"] == 2 and data["pair"] == "(m,m)"


# hand reductions of ((A) A) with A=1=(m,u):
#   wf:     (A)=(m,u)=1, 1 1 = 1, crossed 1
#   belnap: (A)=(u,m)=3, 3 1 = 2, crossed 2
#   paxpa:  (A)=(u,m)=3, 3 1 = 2, crossed (u,u)=0
# and of (A) A in rot:3 with A=mum: (A) crosses all three, umu mum = mmm
@pytest.mark.parametrize("calculus, assign, expected", [
    ("pa", ["A=m"], "u"),
    ("wf", ["A=1"], "1"),
    ("belnap", ["A=1"], "2"),
    ("paxpa", ["A=1"], "0"),
    ("rot:3", ["A=mum"], "(m,m,m)"),
])
def test_eval_calculi(capsys, calculus, assign, expected):
    argv = ["eval", "((A) A)" if calculus != "rot:3" else "(A) A", "--calculus", calculus]
    for a in assign:
        argv += ["--assign", a]
    code, text, _ = out(capsys, argv)
    assert code == 0
    assert text.strip() == expected


def test_equiv_wf_countermodel(capsys):
    code, text, _ = out(capsys, ["equiv", "((A) A)", "", "--calculus", "wf"])
    assert code == 1
    assert "A=1 (m,u)" in text


def test_equiv_json(capsys):
    code, text, _ = out(capsys, ["equiv", "((A) A)", "", "--calculus", "pa", "--json"])
    data = json.loads(text)
    assert code == 0 and data["equal"] and data["countermodel"] is None


def test_parse_error_exit_code(capsys):
    code, text, err = out(capsys, ["eval", "((A)"])
    assert code == 2
    assert "at byte 4" in err
    code, text, _ = out(capsys, ["eval", "((A)", "--json"])
    assert code == 2 and json.loads(text)["offset"] == 4


def test_bad_assignment(capsys):
    code, _, err = out(capsys, ["eval", "A", "--assign", "A=7"])
    assert code == 2 and "0..3" in err
    code, _, err = out(capsys, ["eval", "A"])
    assert code == 2 and "no value" in err


def test_table_text_and_json(capsys):
    code, text, _ = out(capsys, ["table", "oplus"])
    lines = text.splitlines()
    assert code == 0
    assert lines[1].split("|")[1].split() == ["0", "1", "3", "2"]
    assert [line.split("|")[1].split() for line in lines[3:]] == [
        ["0", "1", "3", "2"], ["1", "1", "2", "2"], ["3", "2", "3", "2"], ["2", "2", "2", "2"]]
    code, text, _ = out(capsys, ["table", "or", "--json"])
    assert json.loads(text)["entries"][1] == [0, 0, 3, 3]


def test_check_proof(tmp_path, capsys):
    good = tmp_path / "good.json"
    good.write_text(position_demonstration().dumps(), encoding="utf-8")
    code, text, _ = out(capsys, ["check-proof", str(good)])
    assert code == 0 and text.startswith("valid")

    d = position_demonstration()
    bad = tmp_path / "bad.json"
    bad.write_text(Demonstration(d.start, d.end, [d.steps[0], d.steps[2]]).dumps(), encoding="utf-8")
    code, text, _ = out(capsys, ["check-proof", str(bad), "--json"])
    data = json.loads(text)
    assert code == 1 and data["failing_step"] == 2


def test_check_proof_missing_file(capsys, tmp_path):
    code, _, err = out(capsys, ["check-proof", str(tmp_path / "nope.json")])
    assert code == 2


def test_search_proof(capsys):
    code, text, _ = out(capsys, ["search-proof", "((A) A)", "", "--depth", "3", "--basis", "pa",
                                 "--json"])
    data = json.loads(text)
    assert code == 0 and data["found"]
    assert Demonstration.from_json(data["demonstration"]).end.text == ""
    code, _, _ = out(capsys, ["search-proof", "A", "(A)", "--depth", "2"])
    assert code == 1


@pytest.mark.parametrize("suite", ["pa-consequences", "bf-consequences", "wf", "belnap",
                                   "bilattice-tables", "groups", "rotation", "braid",
                                   "quaternions"])
def test_verify_suites(capsys, suite):
    code, text, _ = out(capsys, ["verify", suite, "--json"])
    data = json.loads(text)
    assert code == 0 and data["passed"]
    assert data["checks"]


def test_verify_all_text(capsys):
    code, text, _ = out(capsys, ["verify", "all"])
    assert code == 0
    assert "FAIL" not in text
    assert text.strip().endswith("checks passed")


def test_entry_point_module():
    proc = subprocess.run([sys.executable, "-m", "bfcalc.cli", "eval", "[[[[[ ]]]]]"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "1"
