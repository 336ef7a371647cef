"""Tests for the command-line front end: expression parsing, golden
outputs, exit codes, JSON determinism, and cache management."""

import random
import subprocess
import sys

import pytest

from machyper.cli import (EXIT_PASS, EXIT_POLE, EXIT_RESOURCE, EXIT_USAGE,
                          EXIT_VERIFY_FAIL, ParamExprError, main,
                          parse_param_expr)
from machyper.ratfunc import ONE, Q, T, rf
from machyper.verify import _draw_field_value


# ---------------------------------------------------------------------------
# parameter expressions

def test_parse_examples():
    assert parse_param_expr("q^2/(1-t)") == Q ** 2 / (ONE - T)
    assert parse_param_expr("2/3") == rf(2) / rf(3)
    assert parse_param_expr("(1-q*t)*(1-t)^-1") == (ONE - Q * T) / (ONE - T)
    assert parse_param_expr("(1-t)^(-1)") == (ONE - T).inverse()
    assert parse_param_expr("-q + 2") == rf(2) - Q
    assert parse_param_expr("q^0") == ONE


def test_parse_errors_carry_positions():
    with pytest.raises(ParamExprError) as exc:
        parse_param_expr("1 + $")
    assert exc.value.position == 4
    with pytest.raises(ParamExprError) as exc:
        parse_param_expr("q +")
    assert exc.value.position == 3
    with pytest.raises(ParamExprError) as exc:
        parse_param_expr("(1-q")
    assert "expected" in str(exc.value)
    with pytest.raises(ParamExprError) as exc:
        parse_param_expr("1 2")
    assert "trailing" in str(exc.value)
    with pytest.raises(ParamExprError):
        parse_param_expr("q^t")


def test_parse_zero_division():
    with pytest.raises(ZeroDivisionError):
        parse_param_expr("1/(1-1)")
    with pytest.raises(ZeroDivisionError):
        parse_param_expr("(q-q)^-1")


def test_parse_round_trips_renderer():
    rng = random.Random(11)
    for _ in range(80):
        v = _draw_field_value(rng)
        assert parse_param_expr(v.render()) == v
    # a value with a nontrivial denominator polynomial
    v = (ONE - Q * T ** 2) / ((ONE - Q) * (ONE - T))
    assert parse_param_expr(v.render()) == v


# ---------------------------------------------------------------------------
# compute/table golden outputs

def test_compute_basis_golden(capsys):
    assert main(["compute", "P", "--partition", "[2]", "--n", "2"]) == EXIT_PASS
    out = capsys.readouterr().out
    assert out == "P[2] (n=2) = m[2] + (-1 + t - q + q*t)/(-1 + q*t)*m[1,1]\n"


def test_compute_binomial_golden(capsys):
    assert main(["compute", "binomial", "--upper", "[2,1]",
                 "--lower", "[1,1]", "--n", "3"]) == EXIT_PASS
    out = capsys.readouterr().out
    assert out == "binomial [2,1] over [1,1] (n=3) = (-1 + q^2*t)/(-1 + q*t)\n"


def test_compute_eigen_golden(capsys):
    assert main(["compute", "eigen", "--direction", "raise", "--level", "1",
                 "--partition", "[1]", "--n", "2"]) == EXIT_PASS
    out = capsys.readouterr().out
    assert out == "eigen raise l=1 at [1] (n=2) = (-1 - q*t)/(-1 + q)\n"


def test_compute_series_golden(capsys):
    assert main(["compute", "series", "--r", "0", "--s", "0",
                 "--n", "1", "--D", "2"]) == EXIT_PASS
    out = capsys.readouterr().out
    assert out == ("series r=0 s=0 n=1 D=2 flavor=macdonald\n"
                   "  C[] = 1\n  C[1] = 1\n  C[2] = 1\n")


def test_table_text(capsys):
    assert main(["table", "P", "--n", "2", "--max-size", "2"]) == EXIT_PASS
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "P[] = m[]"
    assert lines[1] == "P[1] = m[1]"
    assert len(lines) == 4   # (), (1), (2), (1,1)


def test_table_binomial(capsys):
    assert main(["table", "binomial", "--n", "2",
                 "--max-size", "2"]) == EXIT_PASS
    out = capsys.readouterr().out
    assert "binomial [1] over [] = 1" in out


def test_json_outputs_byte_identical(capsys):
    args = ["compute", "series", "--n", "2", "--D", "3",
            "--a", "1/2", "--b", "2/3*q", "--format", "json"]
    assert main(args) == EXIT_PASS
    first = capsys.readouterr().out
    assert main(args) == EXIT_PASS
    assert capsys.readouterr().out == first
    assert first.startswith("{") and '"coeffs"' in first


# ---------------------------------------------------------------------------
# verify command and exit codes

def test_verify_univariate(capsys):
    assert main(["verify", "univariate", "--D", "3",
                 "--draws", "1"]) == EXIT_PASS
    out = capsys.readouterr().out
    assert out.splitlines()[-1].startswith("PASS:")


def test_verify_mutated_fails(capsys):
    assert main(["verify", "univariate", "--D", "3", "--draws", "1",
                 "--mutate", "C[1]"]) == EXIT_VERIFY_FAIL
    out = capsys.readouterr().out
    assert out.splitlines()[-1].startswith("FAIL:")


def test_verify_json(capsys):
    assert main(["verify", "jack", "--draws", "1",
                 "--format", "json"]) == EXIT_PASS
    out = capsys.readouterr().out
    assert out.startswith("[") and '"theorem":"jack"' in out


def test_exit_resource_guard(capsys):
    assert main(["verify", "B", "--n", "7", "--draws", "1"]) == EXIT_RESOURCE
    assert "resource guard" in capsys.readouterr().err


def test_exit_pole(capsys):
    assert main(["compute", "series", "--n", "2", "--D", "3",
                 "--b", "1/q"]) == EXIT_POLE
    assert "pole" in capsys.readouterr().err


def test_exit_usage(capsys):
    # --r disagrees with the number of --a flags
    assert main(["compute", "series", "--n", "1", "--D", "2",
                 "--r", "2", "--a", "1/2"]) == EXIT_USAGE
    capsys.readouterr()
    # malformed expression
    assert main(["compute", "series", "--n", "1", "--D", "2",
                 "--a", "1+"]) == EXIT_USAGE
    capsys.readouterr()
    # malformed partition
    assert main(["compute", "P", "--partition", "nope"]) == EXIT_USAGE
    capsys.readouterr()
    # missing required flag for the object
    assert main(["compute", "P"]) == EXIT_USAGE
    capsys.readouterr()
    # unknown subcommand (argparse)
    assert main(["frobnicate"]) == EXIT_USAGE
    capsys.readouterr()


def test_help_exits_zero(capsys):
    assert main(["--help"]) == EXIT_PASS
    capsys.readouterr()


# ---------------------------------------------------------------------------
# cache management

def test_cache_flow(tmp_path, capsys):
    d = str(tmp_path / "cachedir")
    assert main(["cache", "dir", "--dir", d]) == EXIT_PASS
    assert capsys.readouterr().out.strip() == d
    assert main(["cache", "warm", "--dir", d, "--n", "2",
                 "--max-size", "2"]) == EXIT_PASS
    assert "cached 4 entries" in capsys.readouterr().out
    assert main(["cache", "list", "--dir", d]) == EXIT_PASS
    names = capsys.readouterr().out.split()
    assert len(names) == 4 and all(n.startswith("P_") for n in names)
    assert main(["cache", "clear", "--dir", d]) == EXIT_PASS
    assert "removed 4" in capsys.readouterr().out
    assert main(["cache", "list", "--dir", d]) == EXIT_PASS
    assert capsys.readouterr().out.strip() == ""


def test_cache_requires_directory(monkeypatch, capsys):
    monkeypatch.delenv("MACHYPER_CACHE_DIR", raising=False)
    assert main(["cache", "dir"]) == EXIT_PASS
    assert capsys.readouterr().out.strip() == "(memory only)"
    assert main(["cache", "clear"]) == EXIT_USAGE
    capsys.readouterr()


def test_cache_env_var(monkeypatch, tmp_path, capsys):
    d = str(tmp_path / "envcache")
    monkeypatch.setenv("MACHYPER_CACHE_DIR", d)
    assert main(["cache", "dir"]) == EXIT_PASS
    assert capsys.readouterr().out.strip() == d


# ---------------------------------------------------------------------------
# module entry point

def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "machyper", "compute", "P",
         "--partition", "[1]", "--n", "2"],
        capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert proc.stdout == "P[1] (n=2) = m[1]\n"
