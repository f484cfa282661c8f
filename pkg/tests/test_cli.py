import json
import subprocess
import sys

import pytest

from gln6j.cli import main

GL4 = ["--f1", "((a1 a2 b1 c1))", "--f2", "((a1 b1 b2 c1))", "--f3", "((a1 b1 b2 c1))",
       "--f4", "((a1 a2 b1 c1))"]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check(capsys):
    code, out, err = run(capsys, "check", "--n", "2", "((a1 b1))")
    assert code == 0
    assert json.loads(out) == {"is_semi_invariant": True, "weight": [1, 1]}
    assert "semi-invariant" in err


def test_expand_zero(capsys):
    code, out, _ = run(capsys, "expand", "--n", "2", "((a1 a1))")
    assert code == 0
    assert json.loads(out) == {"poly": [], "warning": "zero expansion"}


def test_expand(capsys):
    code, out, _ = run(capsys, "expand", "--n", "2", "((a1 b1))")
    doc = json.loads(out)
    assert doc["poly"] == [{"coeff": "1/1", "monomial": "a_{1}*b_{2}"},
                           {"coeff": "-1/1", "monomial": "a_{2}*b_{1}"}]
    assert doc["weights"] == {"a": [1, 0], "b": [1, 0], "c": [0, 0]}
    assert doc["zvars"] == [[{"coeff": 1, "zvar": "[a_{1} b_{2}]#0"}, {"coeff": -1, "zvar": "[a_{2} b_{1}]#0"}]]


def test_overlay(capsys):
    code, out, _ = run(capsys, "overlay", "--n", "3", "--weight", "2,1,0", "a^1_1 a^1_2 a^2_3")
    doc = json.loads(out)
    assert code == 0 and doc["membership"] is True
    assert {"coeff": "2/1", "monomial": "a^1_1*a^1_2*a^2_3"} in doc["poly"]


def test_overlay_mismatch_is_error(capsys):
    code, out, _ = run(capsys, "overlay", "--n", "3", "--weight", "2,1,0", "a^1_1 a^2_2 a^2_3")
    assert code == 2 and json.loads(out)["error"]["type"] == "OverlayError"


def test_sixj_gl4(capsys):
    code, out, err = run(capsys, "sixj", "--n", "4", *GL4, "--oracle")
    doc = json.loads(out)
    assert code == 0
    assert doc["value"] == doc["oracle"] == "12/1"
    assert doc["selection_size"] == 12 and doc["agrees"] is True
    assert doc["weights"]["V1"] == [1, 1, 0, 0]
    assert "quadruples" in err


def test_selection(capsys):
    code, out, _ = run(capsys, "selection", "--n", "4", *GL4)
    doc = json.loads(out)
    assert doc["selection_size"] == len(doc["quadruples"]) == 12


@pytest.mark.parametrize("argv, kind", [
    (["expand", "--n", "2", "((a1 b1"], "ParseError"),
    (["expand", "--n", "4", "((a1 a2 b1))"], "SpecError"),
    (["check", "--n", "1", "((a1))"], "ValueError"),
])
def test_errors(capsys, argv, kind):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert json.loads(out)["error"]["type"] == kind
    assert "error" in err


def test_output_file(capsys, tmp_path):
    target = tmp_path / "out.json"
    code, out, _ = run(capsys, "--output", str(target), "check", "--n", "2", "((a1 b1))")
    assert target.read_text() == out


def test_byte_identical_runs_and_workers(capsys):
    args = ["sixj", "--n", "3", "--f1", "((a1 b1 c1))", "--f2", "((a1 b1 c1))",
            "--f3", "((a1 b1 c1))", "--f4", "((a1 b1 c1))"]
    outs = {run(capsys, *args, "--workers", str(w))[1] for w in (1, 1, 2, 3)}
    assert len(outs) == 1
    doc = json.loads(outs.pop())
    assert doc["selection_size"] == 6 and doc["value"] == "6/1"


def test_console_script():
    res = subprocess.run([sys.executable, "-m", "gln6j.cli", "check", "--n", "2", "((a1 b1))"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert json.loads(res.stdout)["weight"] == [1, 1]
