import json
import subprocess
import sys

import pytest

from braidweyl.cli import main
from braidweyl.tables import load_table


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err.strip()


@pytest.mark.parametrize("expr,expected", [
    ("dx*x", "x*dx + (h/2)*dtt"),
    ("x*y - y*x", "h*z"),
    ("1", "1"),
])
def test_normalize(capsys, expr, expected):
    assert run(capsys, "normalize", "u2h", expr) == (0, expected, "")


@pytest.mark.parametrize("op,expr,expected", [
    ("dx", "x^3", "3*x^2 - (1/4)*h^2"),
    ("dx^2+dy^2+dz^2", "x^2+y^2+z^2", "6"),
    ("dx", "1", "0"),
    ("dt", "t", "1"),
])
def test_act(capsys, op, expr, expected):
    assert run(capsys, "act", "u2h", op, expr) == (0, expected, "")


def test_radial(capsys):
    assert run(capsys, "radial", "mu")[:2] == (0, "-24")
    assert run(capsys, "radial", "lambda")[:2] == (0, "0")


def test_limit(capsys):
    code, out, _ = run(capsys, "limit", "weyl-N", "--q1")
    assert code == 0 and "da*a -> a*da + h*da + 1" in out.splitlines()
    code, out, _ = run(capsys, "limit", "mREA", "--hbar0", "--json")
    assert code == 0 and json.loads(out)["rules"]
    code, _, err = run(capsys, "limit", "u2h", "--hbar0")
    assert code == 2 and "pole" in err


def test_usage_errors(capsys):
    assert run(capsys, "normalize", "u2h", "x*")[0] == 2
    assert run(capsys, "normalize", "nope", "x")[0] == 2
    assert run(capsys, "act", "u2h", "dx", "dx")[0] == 2
    assert run(capsys, "verify", "nope")[0] == 2
    assert run(capsys)[0] == 2


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "ch", "--json")
    assert code == 0
    report = json.loads(out)
    assert report and all(set(r) >= {"check", "status"} and r["status"] == "pass" for r in report)


def test_verify_prop6(capsys):
    assert run(capsys, "verify", "prop6")[0] == 0


def test_verify_corrupted_table(capsys, tmp_path):
    doc = json.loads(load_table("mREA").dumps())
    rule = doc["rules"][0]
    rule["rhs"][0]["coeff"] = "-(" + rule["rhs"][0]["coeff"] + ")"
    p = tmp_path / "mREA.json"
    p.write_text(json.dumps(doc))
    code, out, err = run(capsys, "verify", "tables", "--table", str(p), "--json")
    assert code == 1
    failed = [r for r in json.loads(out) if r["status"] == "fail"]
    assert failed and "rule" in failed[-1]["witness"]


def test_user_table_file(capsys, tmp_path):
    p = tmp_path / "t.json"
    p.write_text(load_table("gl2h").dumps())
    assert run(capsys, "normalize", str(p), "da*a")[1] == "a*da + h*da + 1"


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "braidweyl.cli", "normalize", "u2h", "x*y - y*x"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip() == "h*z"
