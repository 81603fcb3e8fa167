import json
import subprocess
import sys
from pathlib import Path

import pytest

from chiwb.cli import EXIT_ASSERTION, EXIT_INPUT, EXIT_OK, _jsonable, emit_report, main, run_session

BASIC = """
ring A = QQ[x,y];
ideal I = y^2 - x^3;
ideal J = y;
chi I J expect=3;
tor I J 0;
multiplicity I;
tangentcone I;
fulton I J points = [(x: 0, 0)];
"""


def run(tmp_path, text, *flags):
    path = tmp_path / "session.chi"
    path.write_text(text)
    return main(["run", str(path), *flags])


def test_exit_ok_and_text_report(tmp_path, capsys):
    assert run(tmp_path, BASIC) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("[1] chi I J expect=3\n  status: ok\n  chi: 3\n")
    assert "[5] fulton I J points = [(x: 0, 0)]" in out
    assert "  point_multiplicity: 2" in out


def test_json_schema(tmp_path, capsys):
    assert run(tmp_path, BASIC, "--format", "json") == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["version"] == 1
    results = doc["results"]
    assert [r["status"] for r in results] == ["ok"] * 5
    assert all(isinstance(r["command"], str) for r in results)
    assert results[0]["chi"] == 3 and results[0]["tor_lengths"] == [3, 0]
    assert results[1]["k_dimension"] == 3
    assert results[4]["fulton_lhs"] == results[4]["fulton_rhs"] == 3
    assert results[4]["chart_points"][0]["coordinates"] == ["0", "0"]
    assert "timing_ms" not in results[0]


def test_timing_flag(tmp_path, capsys):
    run(tmp_path, BASIC, "--format", "json", "--timing")
    doc = json.loads(capsys.readouterr().out)
    assert all(r["timing_ms"] >= 0 for r in doc["results"])


def test_failed_expectation_exits_two(tmp_path, capsys):
    assert run(tmp_path, BASIC.replace("expect=3", "expect=4"), "--format", "json") == EXIT_ASSERTION
    first = json.loads(capsys.readouterr().out)["results"][0]
    assert first["status"] == "assertion_failed"
    assert "expected chi = 4, got 3" in first["message"]


def test_assertion_outranks_errors():
    text = "ring A = QQ[x,y]; ideal I = x; ideal J = y; ideal K = x - 1; chi K J; chi I J expect=0;"
    code, results = run_session(text)
    assert [r["status"] for r in results] == ["error", "assertion_failed"]
    assert code == EXIT_ASSERTION


def test_runtime_error_exits_one():
    code, results = run_session("ring A = QQ[x,y]; ideal I = x; chi I K;")
    assert code == EXIT_INPUT
    assert results[0]["error"] == "PreconditionError"
    code, results = run_session("ring A = QQ[x,y]; ideal I = x - 1; ideal J = y; chi I J;")
    assert (code, results[0]["error"]) == (EXIT_INPUT, "SupportNotAtOrigin")


def test_parse_error_reports_position(tmp_path, capsys):
    assert run(tmp_path, "ring A = QQ[x,y];\nideal I = 2x;\n", "--format", "json") == EXIT_INPUT
    (r,) = json.loads(capsys.readouterr().out)["results"]
    assert r["error"] == "ParseError" and r["line"] == 2


def test_missing_file(tmp_path, capsys):
    assert main(["run", str(tmp_path / "nope.chi")]) == EXIT_INPUT
    assert "cannot read" in capsys.readouterr().err


def test_empty_session(tmp_path, capsys):
    assert run(tmp_path, "# nothing here\n", "--format", "json") == EXIT_OK
    assert json.loads(capsys.readouterr().out) == {"version": 1, "results": []}
    assert run(tmp_path, "") == EXIT_OK
    assert capsys.readouterr().out == ""


def test_field_override(tmp_path, capsys):
    text = "ring A = QQ[x,y]; ideal I = x^2 - 9*y; ideal J = y; chi I J;"
    assert run(tmp_path, text, "--format", "json", "--field", "FF:3") == EXIT_OK
    (r,) = json.loads(capsys.readouterr().out)["results"]
    assert r["chi"] == 2
    with pytest.raises(SystemExit):
        run(tmp_path, text, "--field", "FF:4")
    with pytest.raises(SystemExit):
        run(tmp_path, text, "--field", "GF:5")


def test_field_override_rejects_bad_coefficients(tmp_path, capsys):
    text = "ring A = QQ[x]; ideal I = x/3; chi I I;"
    assert run(tmp_path, text, "--field", "FF:3", "--format", "json") == EXIT_INPUT
    assert json.loads(capsys.readouterr().out)["results"][0]["error"] == "ParseError"


def test_seed_makes_scans_reproducible():
    text = "ring A = QQ[x]; scan positivity count=4;"
    _, a = run_session(text, seed=5)
    _, b = run_session(text, seed=5)
    _, c = run_session(text, seed=6)
    assert a == b
    assert a[0]["instances"] == 4
    assert a[0]["check"] == "scan:positivity" and c[0]["holds"]


def test_budget_exhaustion_is_an_error():
    text = "ring A = QQ[x,y,z]; ideal I = x^5 + y^4 + z^3, x*y*z; ideal J = x + y + z; chi I J;"
    code, results = run_session(text, budget=5)
    assert (code, results[0]["error"]) == (EXIT_INPUT, "BudgetExhausted")


def test_big_integers_become_strings():
    assert _jsonable({"a": [2**60, 5, True, None]}) == {"a": [str(2**60), 5, True, None]}
    doc = json.loads(emit_report([{"command": "c", "status": "ok", "value": -(2**70)}], "json"))
    assert doc["results"][0]["value"] == str(-(2**70))


def test_diagonal_and_flatcheck_commands():
    text = """
    ring A = QQ[s,t,x] base = s,t;
    ideal I = s, x;
    ideal J = t;
    diagonal I J expect=1;
    flatcheck I;
    """
    code, results = run_session(text)
    assert code == EXIT_OK
    assert results[0]["e_values"] == [1, 0, 0]
    assert results[1]["check"] == "r_flatness"


def test_console_script_on_stdin():
    proc = subprocess.run(
        [sys.executable, "-m", "chiwb.cli", "run", "-", "--format", "json"],
        input=BASIC,
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == EXIT_OK
    assert len(json.loads(proc.stdout)["results"]) == 5


def test_demo_session_passes():
    demo = Path(__file__).parent.parent / "demos" / "session.chi"
    code, results = run_session(demo.read_text())
    assert code == EXIT_OK
    assert {r["status"] for r in results} == {"ok"}
