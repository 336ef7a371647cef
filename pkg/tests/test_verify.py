"""Tests for the verification suites: selection handling, seeded draws,
mutation sensitivity, and the classical-limit oracle."""

import random

import pytest

from machyper.errors import PoleError, ResourceGuardError
from machyper.ratfunc import ONE, rf
from machyper.series import HyperParams, check_lower_poles
from machyper.sympoly import basis_poly
from machyper.verify import (DEFAULT_SEED, MAX_SUITE_VARS, PARAM_GRID,
                             SUITE_ORDER, check_classical_limit,
                             draw_hyper_params, jack_oracle, run_suite,
                             suite_passed)


def _json_list(reports):
    return [r.to_json() for r in reports]


# ---------------------------------------------------------------------------
# selection and guards

def test_empty_selection_is_empty():
    assert run_suite((), n=2, D=2, draws=1) == []


def test_unknown_selection():
    with pytest.raises(ValueError):
        run_suite(("A", "nope"), n=2, D=2, draws=1)


def test_variable_guard():
    with pytest.raises(ResourceGuardError):
        run_suite("B", n=MAX_SUITE_VARS + 1, D=2, draws=1)


def test_bad_sizes():
    with pytest.raises(ValueError):
        run_suite("B", n=0, D=2, draws=1)
    with pytest.raises(ValueError):
        run_suite("B", n=2, D=2, draws=0)


def test_constants():
    assert SUITE_ORDER == ("A", "Aprime", "kernel", "B", "C", "kaneko",
                           "tilde", "univariate", "jack")
    assert PARAM_GRID == ((0, 0), (1, 0), (1, 1), (2, 1))


# ---------------------------------------------------------------------------
# seeded parameter draws

def test_draw_shapes_and_determinism():
    p1 = draw_hyper_params(random.Random(5), 2, 1, 2, 3)
    p2 = draw_hyper_params(random.Random(5), 2, 1, 2, 3)
    assert (p1.r, p1.s) == (2, 1)
    assert p1.upper == p2.upper and p1.lower == p2.lower
    for v in p1.upper + p1.lower:
        assert not v.is_zero() and v != ONE
    # lower draws stay clear of the truncation pole set plus headroom
    check_lower_poles(HyperParams((), p1.lower), 2, 5)


def test_draw_streams_vary_with_seed():
    p1 = draw_hyper_params(random.Random(1), 1, 0, 2, 3)
    p2 = draw_hyper_params(random.Random(2), 1, 0, 2, 3)
    assert p1.upper != p2.upper


# ---------------------------------------------------------------------------
# suite runs

def test_full_suite_small_grid(cache):
    reports = run_suite("all", n=2, D=3, draws=1, cache=cache)
    assert reports and suite_passed(reports)
    # every suite contributes at least one report
    assert {r.theorem for r in reports} == set(SUITE_ORDER)
    for r in reports:
        j = r.to_json()
        assert set(j) == {"theorem", "n", "D", "params",
                          "residual_degrees", "pass"}
        assert j["pass"] is True
        assert "pass" in r.render_text()


def test_selection_independent_draws(cache):
    both = run_suite(("B", "C"), n=2, D=3, draws=1, cache=cache)
    only = run_suite(("B",), n=2, D=3, draws=1, cache=cache)
    b_from_both = [r.to_json() for r in both if r.theorem == "B"]
    assert _json_list(only) == b_from_both


def test_seed_determinism(cache):
    r1 = run_suite(("B",), n=2, D=3, draws=2, cache=cache)
    r2 = run_suite(("B",), n=2, D=3, draws=2, cache=cache)
    assert _json_list(r1) == _json_list(r2)
    r3 = run_suite(("B",), n=2, D=3, seed=7, draws=2, cache=cache)
    assert _json_list(r3) != _json_list(r1)   # different parameter draws
    assert suite_passed(r3)                   # but the theorems still hold


def test_mutation_flips_fast_suites(cache):
    sel = ("kernel", "B", "C", "kaneko", "univariate", "jack")
    good = run_suite(sel, n=2, D=3, draws=1, cache=cache)
    bad = run_suite(sel, n=2, D=3, draws=1, cache=cache, mutate=(1,))
    assert suite_passed(good)
    assert len(bad) == len(good)
    for r in bad:
        assert not r.passed


# ---------------------------------------------------------------------------
# classical-limit oracle

def test_jack_oracle_frozen():
    for k in (1, 2, 3):
        m1 = basis_poly("m", (1,), 2)
        assert jack_oracle((1,), k, 2) == m1.scale_rf(rf(k))
        m2 = basis_poly("m", (2,), 2)
        m11 = basis_poly("m", (1, 1), 2)
        want = m2.scale_rf(rf(k * (k + 1))) + m11.scale_rf(rf(2 * k * k))
        assert jack_oracle((2,), k, 2) == want


def test_classical_limit_reports(cache):
    for k in (1, 2):
        rep = check_classical_limit(k, max_size=2, cache=cache)
        assert rep.passed
    assert not check_classical_limit(1, max_size=2, cache=cache,
                                     mutate=True).passed
