import json
import subprocess
import sys

import jsonschema
import pytest

from exostar.cli import main
from exostar.verify import REPORT_SCHEMA


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["product", "--kind", "moyal", "p", "q"], "p*q + 1/2*i*hbar"),
        (["product", "--kind", "exotic", "--average", "p^-1", "p*q"], "q"),
        (["product", "--kind", "moyal", "--max-order", "0", "p", "q"], "p*q"),
        (["transvectant", "-k", "0", "-m", "2", "-n", "3", "q", "q^2"], "q^3"),
        (["transvectant", "-k", "3", "-m", "1", "-n", "1", "q^5", "q^6"], "0"),
        (["transvectant", "-k", "1", "-m", "2", "-n", "1", "q", "q"], "2*q"),
        (["quantize", "--rep", "exotic", "p*q^2"], "1/2*q^2"),
        (["quantize", "--rep", "weyl", "p^-1"], "-i*hbar^-1*D^-1"),
        (["quantize", "--rep", "weyl", "q"], "q"),
        (["conjugate", "--direction", "pullback", "p*q"], "1/2*p*q"),
        (["conjugate", "--direction", "pushforward", "p*q"], "2*p*q"),
    ],
)
def test_examples(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out == expected


@pytest.mark.parametrize(
    "argv, code, needle",
    [
        (["product", "--kind", "moyal", "p", "(("], 2, "ParseError"),
        (["product", "--kind", "moyal", "p", "1/q"], 2, "NormalizeError"),
        (["conjugate", "--direction", "pushforward", "p^2*q"], 1, "ParityError"),
        (["verify", "--suite", "bogus"], 2, "invalid choice"),
        (["transvectant", "-k", "-1", "-m", "1", "-n", "1", "q", "q"], 2, "non-negative"),
        (["transvectant", "-k", "1", "-m", "1", "-n", "1", "p", "q"], 2, "polynomial in q"),
        (["verify", "--suite", "prop1", "--seed", "-3"], 2, "unsigned"),
        (["frobnicate"], 2, "invalid choice"),
    ],
)
def test_errors(capsys, argv, code, needle):
    got, out, err = run(capsys, *argv)
    assert got == code
    assert needle in err
    assert out == ""


def test_formats(capsys):
    _, out, _ = run(capsys, "product", "--format", "json", "p", "q")
    assert json.loads(out)["terms"][1] == {"p": 0, "q": 0, "h": 1, "re": "0", "im": "1/2"}
    _, out, _ = run(capsys, "quantize", "--rep", "exotic", "--format", "latex", "p")
    assert out == r"-\frac{1}{2} \hbar^{2} \partial^{2}"


def test_verify_json_schema_and_exit(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "prop43", "--max-k", "3", "--max-p", "1", "--max-q", "2",
                       "--format", "json")
    assert code == 0
    report = json.loads(out)
    jsonschema.validate(report, REPORT_SCHEMA)
    assert report["bounds"]["max_k"] == 3 and report["failures"] == []


def test_verify_nontrivial_reports_infeasible(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "nontrivial", "--max-K", "2")
    assert code == 0
    assert "J7 at weight -5, K=2: Infeasible" in out and "J9 at weight -7, K=2: Infeasible" in out


def test_verify_violation_exit_code(capsys, monkeypatch):
    from exostar import verify

    def broken(b, rep):
        rep.record("always_fails", "case", False, "forced")

    monkeypatch.setitem(verify.SUITES, "prop1", (broken, (0, 0, 0, 0), "forced failure"))
    code, out, err = run(capsys, "verify", "--suite", "prop1")
    assert code == 1
    assert "first counterexample for always_fails" in out
    assert "counterexample" in err


def test_help_lists_suites(capsys):
    assert main(["verify", "--help"]) == 0
    out = capsys.readouterr().out
    for name in ("def1", "nontrivial", "mobius-op"):
        assert name in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "exostar", "product", "p", "q"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "p*q + 1/2*i*hbar"
