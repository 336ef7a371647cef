"""The two-parameter symmetric basis and its normalizations.

The monic basis P is built as the eigenbasis of the first symmetrized
shift operator, by a triangular solve over the dominance order in the
monomial basis.  The integral form J multiplies P by the lower hook
product; the dual integral form divides by the upper hook product; the
principally normalized form divides J by its own evaluation at the
staircase point x_i = t^(n-i).

A MacdonaldCache memoizes the expensive pieces (the monic basis and the
shift-operator columns) and can persist the basis to disk as JSON, one
file per (n, partition), validated against the closed-form principal
evaluation whenever a file is read or written.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import lru_cache

from .errors import MacHyperError
from .partitions import (Partition, SkewCover, dominates, format_partition,
                         hook_products, length, lower_covers, make_partition,
                         n_stat, partitions_of, revlex_key, size, upper_covers)
from .qops import apply_raise1, apply_shift1, eigen_shift
from .ratfunc import (ONE, Q, RatFuncQT, T, invert_qt, qt_monomial, rf,
                      t_monomial)
from .sympoly import BiSymPoly, SymPoly, basis_poly, orbit

CACHE_ENV_VAR = "MACHYPER_CACHE_DIR"
_FORMAT = 1


class MacdonaldCache:
    """Memo store for the monic basis, keyed by (n, partition).

    cache_dir of None falls back to the MACHYPER_CACHE_DIR environment
    variable; if neither is set the cache is memory-only.
    """

    def __init__(self, cache_dir: str | None = None):
        if cache_dir is None:
            cache_dir = os.environ.get(CACHE_ENV_VAR) or None
        self.cache_dir = cache_dir
        self._P: dict[tuple[int, Partition], SymPoly] = {}
        self._columns: dict[tuple[int, Partition], dict[Partition, RatFuncQT]] = {}

    # -- disk layout: one JSON file per entry ------------------------------

    def _path(self, lam: Partition, n: int) -> str:
        name = "-".join(str(p) for p in lam) if lam else "0"
        return os.path.join(self.cache_dir, f"P_n{n}_{name}.json")

    def _load_disk(self, lam: Partition, n: int) -> SymPoly | None:
        if not self.cache_dir:
            return None
        path = self._path(lam, n)
        if not os.path.exists(path):
            return None
        try:
            with open(path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
            if data.get("format") != _FORMAT or data.get("n") != n:
                return None
            if make_partition(data.get("partition", [])) != lam:
                return None
            coeffs = {}
            for entry in data["coeffs"]:
                mu = make_partition(entry["partition"])
                coeffs[mu] = RatFuncQT.from_json(entry["value"])
            poly = SymPoly.from_coeffs(n, coeffs)
        except (KeyError, ValueError, TypeError, json.JSONDecodeError):
            return None
        if not _principal_matches(poly, lam, n):
            return None
        return poly

    def _store_disk(self, lam: Partition, n: int, poly: SymPoly) -> None:
        if not self.cache_dir:
            return
        os.makedirs(self.cache_dir, exist_ok=True)
        items = sorted(poly.coeffs.items(), key=lambda kv: revlex_key(kv[0]))
        data = {
            "format": _FORMAT,
            "n": n,
            "partition": list(lam),
            "coeffs": [
                {"partition": list(mu), "value": c.to_json()} for mu, c in items
            ],
        }
        with open(self._path(lam, n), "w", encoding="utf-8") as fh:
            json.dump(data, fh)

    def list_disk(self) -> list[str]:
        if not self.cache_dir or not os.path.isdir(self.cache_dir):
            return []
        return sorted(f for f in os.listdir(self.cache_dir)
                      if f.startswith("P_n") and f.endswith(".json"))

    def clear_disk(self) -> int:
        names = self.list_disk()
        for f in names:
            os.remove(os.path.join(self.cache_dir, f))
        return len(names)

    # -- access -------------------------------------------------------------

    def get_P(self, lam: Partition, n: int) -> SymPoly:
        key = (n, lam)
        hit = self._P.get(key)
        if hit is not None:
            return hit
        poly = self._load_disk(lam, n)
        if poly is None:
            poly = _build_P(lam, n, self)
            if not _principal_matches(poly, lam, n):
                raise MacHyperError(
                    f"principal evaluation mismatch for {format_partition(lam)}, n={n}")
            self._store_disk(lam, n, poly)
        self._P[key] = poly
        return poly

    def shift1_column(self, nu: Partition, n: int) -> dict[Partition, RatFuncQT]:
        key = (n, nu)
        hit = self._columns.get(key)
        if hit is None:
            col = apply_shift1(basis_poly("m", nu, n)).coeffs
            for mu in col:
                # dominance triangularity of the shift operator
                assert dominates(nu, mu), (nu, mu)
            diag = col.get(nu)
            assert diag is not None and diag == eigen_shift(1, nu, n), nu
            hit = col
            self._columns[key] = hit
        return hit


_DEFAULT_CACHE = MacdonaldCache()


def default_cache() -> MacdonaldCache:
    return _DEFAULT_CACHE


# ---------------------------------------------------------------------------
# construction

def _build_P(lam: Partition, n: int, cache: MacdonaldCache) -> SymPoly:
    if length(lam) > n:
        raise ValueError(
            f"partition {format_partition(lam)} has more parts than variables (n={n})")
    d = size(lam)
    downset = [mu for mu in partitions_of(d, n) if dominates(lam, mu)]
    assert downset and downset[0] == lam
    eig_top = eigen_shift(1, lam, n)
    coeffs: dict[Partition, RatFuncQT] = {lam: ONE}
    for mu in downset[1:]:
        num = rf(0)
        for nu, c_nu in coeffs.items():
            col = cache.shift1_column(nu, n)
            entry = col.get(mu)
            if entry is not None:
                num = num + c_nu * entry
        div = eig_top - eigen_shift(1, mu, n)
        assert not div.is_zero(), (lam, mu)
        val = num / div
        if not val.is_zero():
            coeffs[mu] = val
    return SymPoly.from_coeffs(n, coeffs)


def macdonald_P(lam: Partition, n: int, cache: MacdonaldCache | None = None) -> SymPoly:
    """Monic eigenbasis element: m_lam plus dominance-lower monomial terms."""
    cache = cache or _DEFAULT_CACHE
    return cache.get_P(make_partition(lam), n)


@dataclass(frozen=True)
class MacForms:
    """The four normalizations of one basis element plus its scalars."""
    P: SymPoly
    J: SymPoly
    Jstar: SymPoly
    Jnorm: SymPoly
    hook_lower: RatFuncQT     # J = hook_lower * P
    hook_upper: RatFuncQT     # Jstar = P / hook_upper
    hook_pair: RatFuncQT      # product of the two
    principal_J: RatFuncQT    # J at the staircase point


def macdonald_forms(lam: Partition, n: int, cache: MacdonaldCache | None = None,
                    invert: bool = False) -> MacForms:
    """All normalizations at once.

    invert=True returns the forms with q and t replaced by reciprocals
    (coefficientwise inversion of the monic basis is legitimate: the
    defining triangular eigenproblem maps onto itself under the swap).
    """
    lam = make_partition(lam)
    P = macdonald_P(lam, n, cache)
    if invert:
        P = SymPoly.from_coeffs(n, {mu: invert_qt(c) for mu, c in P.coeffs.items()})
    c, cp, j = hook_products(lam, invert)
    principal = principal_J_closed(lam, n, invert)
    J = P.scale_rf(c)
    Jstar = P.scale_rf(cp.inverse())
    Jnorm = J.scale_rf(principal.inverse())
    return MacForms(P=P, J=J, Jstar=Jstar, Jnorm=Jnorm,
                    hook_lower=c, hook_upper=cp, hook_pair=j,
                    principal_J=principal)


# ---------------------------------------------------------------------------
# principal evaluation

@lru_cache(maxsize=None)
def principal_m(lam: Partition, n: int, invert: bool = False) -> RatFuncQT:
    """Monomial basis element at the staircase x_i = t^(n-i)."""
    s = -1 if invert else 1
    out = rf(0)
    for expo in orbit(lam, n):
        k = sum((n - 1 - i) * e for i, e in enumerate(expo))
        out = out + t_monomial(s * k)
    return out


def principal_eval(f: SymPoly, invert: bool = False) -> RatFuncQT:
    """Evaluate at the staircase point x_i = t^(n-i) (reciprocal if invert)."""
    out = rf(0)
    for mu, c in f.coeffs.items():
        out = out + c * principal_m(mu, f.n_vars, invert)
    return out


def principal_J_closed(lam: Partition, n: int, invert: bool = False) -> RatFuncQT:
    """Closed form for the integral form at the staircase:
    t^(n(lam)) * prod over cells (1 - t^n q^(j-1) t^(1-i))."""
    from .partitions import pochhammer_qt
    s = -1 if invert else 1
    if length(lam) > n:
        return rf(0)
    return t_monomial(s * n_stat(lam)) * pochhammer_qt(t_monomial(s * n), lam, invert)


def _principal_matches(P: SymPoly, lam: Partition, n: int) -> bool:
    c, _, _ = hook_products(lam)
    return principal_eval(P) * c == principal_J_closed(lam, n)


# ---------------------------------------------------------------------------
# expansions in the basis

def expand_in_P(f: SymPoly, cache: MacdonaldCache | None = None) -> dict[Partition, RatFuncQT]:
    """Coordinates of f in the monic basis, by triangular elimination."""
    cache = cache or _DEFAULT_CACHE
    n = f.n_vars
    rest = f
    out: dict[Partition, RatFuncQT] = {}
    while not rest.is_zero():
        kappa = max(rest.coeffs, key=revlex_key)
        c = rest.coeffs[kappa]
        out[kappa] = c
        rest = rest - macdonald_P(kappa, n, cache).scale_rf(c)
        assert kappa not in rest.coeffs
    return out


def expand_in_Jstar(f: SymPoly, cache: MacdonaldCache | None = None) -> dict[Partition, RatFuncQT]:
    """Coordinates of f in the dual integral basis."""
    return {kappa: c * hook_products(kappa)[1]
            for kappa, c in expand_in_P(f, cache).items()}


def expand_in_J(f: SymPoly, cache: MacdonaldCache | None = None) -> dict[Partition, RatFuncQT]:
    """Coordinates of f in the integral basis."""
    return {kappa: c / hook_products(kappa)[0]
            for kappa, c in expand_in_P(f, cache).items()}


# ---------------------------------------------------------------------------
# cover coefficients (generalized binomial coefficients), three routes

def binomial_by_expansion(upper: Partition, lower: Partition, n: int,
                          cache: MacdonaldCache | None = None) -> RatFuncQT:
    """Cover coefficient read off from the raising action.

    Expands raise1 applied to the dual integral form of `lower` in the
    dual integral basis; the coefficient at `upper` equals
    t^(row offset) times the cover coefficient.  Asserts that only upper
    covers of `lower` appear in the expansion.
    """
    upper = make_partition(upper)
    lower = make_partition(lower)
    cache = cache or _DEFAULT_CACHE
    cover = _find_cover(upper, lower, n)
    forms = macdonald_forms(lower, n, cache)
    raised = apply_raise1(forms.Jstar)
    expansion = expand_in_Jstar(raised, cache)
    allowed = {cv.upper for cv in upper_covers(lower, max_length=n)}
    for kappa, c in expansion.items():
        assert kappa in allowed and not c.is_zero(), (kappa, lower)
    coeff = expansion.get(upper, rf(0))
    return coeff * t_monomial(-cover.n_skew)


def binomial_raising_closed(upper: Partition, lower: Partition, n: int,
                            cache: MacdonaldCache | None = None) -> RatFuncQT:
    """Cover coefficient from the closed product over spectral points of
    the lower partition (the raising-direction evaluation)."""
    upper = make_partition(upper)
    lower = make_partition(lower)
    cache = cache or _DEFAULT_CACHE
    cover = _find_cover(upper, lower, n)
    i0 = cover.row
    z = [qt_monomial(lower[i - 1] if i <= len(lower) else 0, 1 - i)
         for i in range(1, n + 1)]
    prod = ONE
    for i in range(1, n + 1):
        if i == i0:
            continue
        prod = prod * ((T * z[i0 - 1] - z[i - 1]) / (z[i0 - 1] - z[i - 1]))
    lhs = prod / (ONE - Q)
    ratio = (jstar_principal(upper, n) / jstar_principal(lower, n))
    return lhs / (t_monomial(cover.n_skew) * ratio)


def binomial_lowering_closed(upper: Partition, lower: Partition, n: int) -> RatFuncQT:
    """Cover coefficient from the closed product over spectral points of
    the upper partition (the lowering-direction evaluation)."""
    upper = make_partition(upper)
    lower = make_partition(lower)
    cover = _find_cover(upper, lower, n)
    i0 = cover.row
    z = [qt_monomial(upper[i - 1] if i <= len(upper) else 0, 1 - i)
         for i in range(1, n + 1)]
    prod = ONE
    tinv = t_monomial(-1)
    for i in range(1, n + 1):
        if i == i0:
            continue
        prod = prod * ((tinv * z[i0 - 1] - z[i - 1]) / (z[i0 - 1] - z[i - 1]))
    return (ONE - t_monomial(n - 1) * z[i0 - 1]) / (ONE - Q) * prod


def jstar_principal(lam: Partition, n: int, invert: bool = False) -> RatFuncQT:
    """Closed form for the dual integral form at the staircase point."""
    _, _, j = hook_products(lam, invert)
    return principal_J_closed(lam, n, invert) / j


def _find_cover(upper: Partition, lower: Partition, n: int) -> SkewCover:
    for cv in upper_covers(lower, max_length=n):
        if cv.upper == upper:
            return cv
    raise ValueError(
        f"{format_partition(upper)} does not cover {format_partition(lower)}")


# ---------------------------------------------------------------------------
# the reproducing-kernel identity, truncated

def cauchy_truncated(n: int, D: int, cache: MacdonaldCache | None = None,
                     check_product: bool = True) -> tuple[BiSymPoly, BiSymPoly]:
    """Both sides of the kernel identity through total degree D per alphabet.

    Sum side: sum over partitions of J(x) J(y) / hook_pair.  Product side:
    the double product of (t x_i y_j; q)-type factors, expanded from the
    one-variable coefficient recurrence g_k = g_(k-1)(1 - t q^(k-1))/(1 - q^k)
    coming from the functional equation (1-z) g(z) = (1 - t z) g(q z).
    """
    cache = cache or _DEFAULT_CACHE
    sum_side = BiSymPoly.zero(n)
    for d in range(D + 1):
        for lam in partitions_of(d, n):
            forms = macdonald_forms(lam, n, cache)
            sum_side = sum_side.add_product(forms.hook_pair.inverse(), forms.J, forms.J)

    gk = [ONE]
    for k in range(1, D + 1):
        gk.append(gk[-1] * (ONE - qt_monomial(k - 1, 1)) / (ONE - qt_monomial(k, 0)))

    width = 2 * n
    raw: dict[tuple[int, ...], RatFuncQT] = {(0,) * width: ONE}
    for i in range(n):
        for j in range(n):
            nxt: dict[tuple[int, ...], RatFuncQT] = {}
            for e, c in raw.items():
                xdeg = sum(e[:n])
                for k in range(0, D - xdeg + 1):
                    if k and gk[k].is_zero():
                        continue
                    e2 = list(e)
                    e2[i] += k
                    e2[n + j] += k
                    key = tuple(e2)
                    add = c * gk[k] if k else c
                    cur = nxt.get(key)
                    tot = add if cur is None else cur + add
                    if tot.is_zero():
                        nxt.pop(key, None)
                    else:
                        nxt[key] = tot
            raw = nxt

    prod_side = BiSymPoly.zero(n)
    coeffs: dict[tuple[Partition, Partition], RatFuncQT] = {}
    for e, c in raw.items():
        ex, ey = e[:n], e[n:]
        if all(ex[a] >= ex[a + 1] for a in range(n - 1)) and \
           all(ey[a] >= ey[a + 1] for a in range(n - 1)):
            lx = tuple(v for v in ex if v)
            ly = tuple(v for v in ey if v)
            coeffs[(lx, ly)] = c
    prod_side = BiSymPoly(n, coeffs)

    if check_product:
        rebuilt: dict[tuple[int, ...], RatFuncQT] = {}
        for (lx, ly), c in coeffs.items():
            for ex in orbit(lx, n):
                for ey in orbit(ly, n):
                    rebuilt[ex + ey] = c
        assert rebuilt == raw, "product side is not bisymmetric"
    return sum_side, prod_side
