"""Monic (q,t)-basis: independent Gram-Schmidt oracle, specializations,
cover coefficients via three routes, principal values, disk cache."""

import json
import os
from fractions import Fraction

import pytest

from machyper.macdonald import (MacdonaldCache, binomial_by_expansion,
                                binomial_lowering_closed,
                                binomial_raising_closed, cauchy_truncated,
                                expand_in_J, expand_in_Jstar, expand_in_P,
                                jstar_principal, macdonald_P, macdonald_forms,
                                principal_J_closed, principal_eval)
from machyper.partitions import (conjugate, dominates, enumerate_partitions,
                                 length, lower_covers, partitions_of,
                                 upper_covers)
from machyper.qops import apply_shift1, eigen_shift
from machyper.ratfunc import ONE, Q, T, invert_qt, rf, substitute
from machyper.sympoly import SymPoly, basis_poly, hall_inner

F = Fraction


# -- independent construction oracle -----------------------------------------
#
# Orthogonalize the monomial basis, least dominant partition first, under the
# deformed power-sum pairing.  This route never touches the shift operator
# used by the library construction.

def gram_schmidt_basis(d: int, N: int) -> dict:
    ps = list(reversed(partitions_of(d, N)))
    # the iteration order must refine dominance upward
    for i, mu in enumerate(ps):
        for lam in ps[i + 1:]:
            assert not dominates(mu, lam) or mu == lam
    built: dict = {}
    for idx, lam in enumerate(ps):
        f = basis_poly("m", lam, N)
        for mu in ps[:idx]:
            if dominates(lam, mu):
                pmu = built[mu]
                coef = hall_inner(f, pmu) / hall_inner(pmu, pmu)
                f = f - pmu.scale_rf(coef)
        built[lam] = f
    return built


def test_matches_gram_schmidt_oracle(cache):
    for d in range(0, 4):
        oracle = gram_schmidt_basis(d, max(d, 1))
        for lam, want in oracle.items():
            for n in range(max(length(lam), 1), max(d, 1) + 1):
                assert macdonald_P(lam, n, cache) == want.restrict(n), (lam, n)


def test_pairwise_orthogonal(cache):
    n = 3
    for d in range(1, 4):
        ps = partitions_of(d, n)
        for i, lam in enumerate(ps):
            for mu in ps[i + 1:]:
                got = hall_inner(macdonald_P(lam, n, cache),
                                 macdonald_P(mu, n, cache))
                assert got.is_zero(), (lam, mu)


def test_triangular_and_monic(cache):
    n = 3
    for lam in enumerate_partitions(4, n):
        P = macdonald_P(lam, n, cache)
        assert P.coeffs[lam] == ONE
        for mu in P.coeffs:
            assert dominates(lam, mu)


def test_shift_operator_eigenvector(cache):
    for n in (1, 2, 3):
        for lam in enumerate_partitions(3, n):
            P = macdonald_P(lam, n, cache)
            assert apply_shift1(P) == P.scale_rf(eigen_shift(1, lam, n))


def test_too_long_partition_rejected(cache):
    with pytest.raises(ValueError):
        macdonald_P((1, 1, 1), 2, cache)


# -- classical specializations -------------------------------------------------

SCHUR_IN_M = {
    (2,): {(2,): 1, (1, 1): 1},
    (1, 1): {(1, 1): 1},
    (3,): {(3,): 1, (2, 1): 1, (1, 1, 1): 1},
    (2, 1): {(2, 1): 1, (1, 1, 1): 2},
    (1, 1, 1): {(1, 1, 1): 1},
}


def test_equal_parameters_give_schur(cache):
    n = 3
    for lam, kostka in SCHUR_IN_M.items():
        P = macdonald_P(lam, n, cache)
        got = {mu: substitute(c, tval=Q) for mu, c in P.coeffs.items()}
        want = {mu: rf(k) for mu, k in kostka.items() if len(mu) <= n}
        assert got == want


def test_t_one_collapses_to_monomial(cache):
    n = 3
    for lam in enumerate_partitions(4, n):
        P = macdonald_P(lam, n, cache)
        got = {mu: substitute(c, tval=ONE) for mu, c in P.coeffs.items()}
        got = {mu: c for mu, c in got.items() if not c.is_zero()}
        assert got == {lam: ONE}


def test_q_one_gives_elementary_of_conjugate(cache):
    n = 3
    for lam in enumerate_partitions(4, n):
        P = macdonald_P(lam, n, cache)
        coeffs = {mu: substitute(c, qval=ONE) for mu, c in P.coeffs.items()}
        got = SymPoly.from_coeffs(n, coeffs)
        assert got == basis_poly("e", conjugate(lam), n)


# -- forms and principal values -------------------------------------------------

def test_forms_normalizations(cache):
    n = 2
    for lam in enumerate_partitions(3, n):
        f = macdonald_forms(lam, n, cache)
        assert f.J == f.P.scale_rf(f.hook_lower)
        assert f.Jstar == f.P.scale_rf(f.hook_upper.inverse())
        assert f.hook_pair == f.hook_lower * f.hook_upper
        assert f.Jnorm == f.J.scale_rf(f.principal_J.inverse())
        assert principal_eval(f.J) == f.principal_J
        assert principal_eval(f.Jstar) == jstar_principal(lam, n)


def test_forms_invert_mirror(cache):
    n = 2
    for lam in enumerate_partitions(3, n):
        plain = macdonald_forms(lam, n, cache)
        mirrored = macdonald_forms(lam, n, cache, invert=True)
        for mu, c in plain.P.coeffs.items():
            assert mirrored.P.coeffs[mu] == invert_qt(c)
        assert mirrored.hook_lower == invert_qt(plain.hook_lower)
        assert mirrored.principal_J == invert_qt(plain.principal_J)


def test_principal_closed_form(cache):
    for n in (1, 2, 3):
        for lam in enumerate_partitions(4, n):
            J = macdonald_forms(lam, n, cache).J
            assert principal_eval(J) == principal_J_closed(lam, n)
    # too many parts evaluates to zero
    assert principal_J_closed((1, 1, 1), 2) == rf(0)


# -- cover coefficients ----------------------------------------------------------

def test_binomial_three_routes_agree(cache):
    for n in (1, 2, 3):
        for mu in enumerate_partitions(3, n):
            for cv in upper_covers(mu, max_length=n):
                b1 = binomial_by_expansion(cv.upper, mu, n, cache)
                b2 = binomial_raising_closed(cv.upper, mu, n, cache)
                b3 = binomial_lowering_closed(cv.upper, mu, n)
                assert b1 == b2 == b3, (cv.upper, mu, n)


def test_binomial_frozen_values(cache):
    assert binomial_by_expansion((1,), (), 2, cache) == ONE
    got = binomial_raising_closed((2, 1), (1, 1), 3, cache)
    assert got == (ONE - Q ** 2 * T) / (ONE - Q * T)
    # adding the first box is independent of where the series truncates
    assert binomial_raising_closed((1,), (), 1, cache) == ONE


def test_binomial_rejects_non_cover(cache):
    with pytest.raises(ValueError):
        binomial_raising_closed((3,), (1, 1), 3, cache)


# -- basis expansions -------------------------------------------------------------

def test_expansions_round_trip(cache):
    n = 2
    f = basis_poly("m", (2, 1), n).scale_rf(Q) + basis_poly("m", (1,), n) \
        + SymPoly.one(n).scale_rf(T)
    for expand, form in ((expand_in_P, "P"), (expand_in_J, "J"),
                         (expand_in_Jstar, "Jstar")):
        coords = expand(f, cache)
        back = SymPoly.zero(n)
        for kappa, c in coords.items():
            forms = macdonald_forms(kappa, n, cache)
            back = back + getattr(forms, form).scale_rf(c)
        assert back == f


def test_cauchy_kernel_product(cache):
    # the check_product flag makes the builder verify the factorization
    sum_side, prod_side = cauchy_truncated(2, 3, cache, check_product=True)
    for side in (sum_side, prod_side):
        assert side.swap() == side
        assert (0, 0) in side.bidegrees() and (3, 3) in side.bidegrees()
    # the two routes agree on every bidegree that both truncations cover
    for dx, dy in sum_side.bidegrees():
        if dx <= 3 and dy <= 3:
            assert sum_side.bidegree_component(dx, dy) == \
                prod_side.bidegree_component(dx, dy)


# -- disk cache ---------------------------------------------------------------------

def test_cache_disk_round_trip(tmp_path):
    d = str(tmp_path)
    c1 = MacdonaldCache(d)
    p1 = c1.get_P((2,), 2)
    files = c1.list_disk()
    assert "P_n2_2.json" in files
    c2 = MacdonaldCache(d)
    assert c2.get_P((2,), 2) == p1

    # corrupted entries are ignored and rebuilt
    path = os.path.join(d, "P_n2_2.json")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("{not json")
    c3 = MacdonaldCache(d)
    assert c3.get_P((2,), 2) == p1
    with open(path, "r", encoding="utf-8") as fh:
        json.load(fh)  # rebuilt file is valid again

    # tampered coefficients fail the principal-value audit and are rebuilt
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    data["coeffs"][0]["value"]["num"] = [[0, 0, "7"]]
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh)
    c4 = MacdonaldCache(d)
    assert c4.get_P((2,), 2) == p1

    assert c1.clear_disk() >= 1
    assert c1.list_disk() == []


def test_cache_env_var(tmp_path, monkeypatch):
    monkeypatch.setenv("MACHYPER_CACHE_DIR", str(tmp_path))
    c = MacdonaldCache()
    assert c.cache_dir == str(tmp_path)
    c.get_P((1,), 2)
    assert c.list_disk() == ["P_n2_1.json"]
    monkeypatch.delenv("MACHYPER_CACHE_DIR")
    assert MacdonaldCache().cache_dir is None
