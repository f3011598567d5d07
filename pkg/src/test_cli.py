"""
Tests for the command-line front end.
"""

import io
import json

import pytest

from src.cli import run

SHARED_P = "x*(7*x-5)+(x+1)^2*x^2*(x-2)^2*y"
SHARED_Q = "2*x*(4*x-5)+(x+1)^2*x^2*(x-2)^2*y"


def invoke(*argv):
    stdout, stderr = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=stdout, stderr=stderr)
    return code, stdout.getvalue(), stderr.getvalue()


@pytest.fixture(autouse=True)
def quiet_environment(monkeypatch):
    for name in ("LINLIKE_LOG_FILE", "LINLIKE_ORACLE_BUDGET", "LINLIKE_SAMPLES_PER_REGION"):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setenv("LINLIKE_LOG_LEVEL", "WARNING")


def test_analyze_cubic():
    code, out, _ = invoke("analyze", "x + x^3*y")
    assert code == 0
    payload = json.loads(out)
    assert [root["value"] for root in payload["roots"]] == ["0"]
    assert [value["value"] for value in payload["bifurcation"]] == ["0"]
    assert [(t["kind"], t["signs"]) for t in payload["tokens"]] == [("L", ["-"]), ("R", ["-"])]
    assert payload["fiber_counts"]["generic"] == 2
    assert [s["id"] for s in payload["separatrices"]] == ["V0", "I0:R", "I1:L"]


def test_analyze_with_transform():
    code, out, _ = invoke("analyze", "x + (x+1)^2*x^2*(x-1)^2*y", "--transform", "hflip")
    assert code == 0
    payload = json.loads(out)
    assert payload["map"] == "-x + x^6*y - 2*x^4*y + x^2*y"


def test_analyze_is_byte_identical():
    assert invoke("analyze", SHARED_P) == invoke("analyze", SHARED_P)


def test_analyze_pretty_adds_a_table():
    code, out, _ = invoke("analyze", SHARED_P, "--pretty")
    assert code == 0
    assert "II(d)" in out and "II(a)" in out


def test_simple_zero_is_an_input_error():
    code, out, err = invoke("analyze", "x + x*y")
    assert code == 2
    assert out == ""
    payload = json.loads(err)
    assert payload["error"] == "SIMPLE_ZERO"
    assert payload["root"]["value"] == "0"


def test_syntax_error_reports_position():
    code, _, err = invoke("analyze", "x + * y")
    assert code == 2
    payload = json.loads(err)
    assert payload["error"] == "SYNTAX_ERROR"
    assert payload["position"] == 4


def test_compare_first_pair():
    code, out, _ = invoke("compare", SHARED_P, SHARED_Q)
    assert code == 0
    payload = json.loads(out)
    assert payload["foliation_o"] is True
    assert payload["function_top"] is False
    assert payload["obstructions"]["function_top"] == "SIGMA_NOT_MONOTONE"


def test_compare_pretty_explains_obstructions():
    code, out, _ = invoke("compare", "x + x^3*y", "-x - x^3*y", "--pretty")
    assert code == 0
    assert "no ordinary leaf keeps its side" in out


def test_compare_with_oracle():
    code, out, _ = invoke("compare", "x + x^3*y", "-x - x^3*y", "--oracle", "--budget", "16")
    assert code == 0
    reports = json.loads(out)["oracle"]
    assert [report["transformation"] for report in reports] == ["identity"]
    assert reports[0]["violations"] == []


def test_oracle_out_of_scope_exit_code():
    code, _, err = invoke("compare", "x + (x^2-2)^2*y", "x + (x^2-2)^2*y", "--oracle")
    assert code == 3
    assert json.loads(err)["error"] == "ORACLE_SCOPE"


def test_oracle_forced_wrong_correspondence():
    code, out, _ = invoke("oracle", SHARED_P, SHARED_Q, "--transformation", "hflip", "--force")
    assert code == 0
    assert len(json.loads(out)["violations"]) >= 1


def test_oracle_refuses_unmatched_transformation():
    code, _, err = invoke("oracle", SHARED_P, SHARED_Q, "--transformation", "hflip")
    assert code == 2
    assert json.loads(err)["error"] == "PRECONDITION_VIOLATED"


def test_render_to_file(tmp_path):
    target = tmp_path / "portrait.svg"
    code, out, _ = invoke("render", "x + x^3*y", "--out", str(target), "--size", "320x240")
    assert code == 0
    assert json.loads(out)["out"] == str(target)
    assert target.read_bytes().startswith(b"<?xml")


def test_render_empty_viewport():
    code, _, err = invoke("render", "x + x^3*y", "--viewport", "1,1,0,1")
    assert code == 2
    assert json.loads(err)["error"] == "EMPTY_VIEWPORT"


def test_expression_from_file(tmp_path):
    source = tmp_path / "p.txt"
    source.write_text("x + x^3*y\n", encoding="utf-8")
    code, out, _ = invoke("analyze", f"@{source}")
    assert code == 0
    assert json.loads(out)["k"] == 1


def test_missing_expression_file():
    code, _, err = invoke("analyze", "@/nonexistent/expression.txt")
    assert code == 2
    assert json.loads(err)["error"] == "INPUT_ERROR"


def test_unknown_subcommand_is_a_usage_error():
    code, _, _ = invoke("plot", "x")
    assert code == 2
