"""q-difference operators on symmetric polynomials.

Everything here acts on SymPoly values in a fixed number of variables n.
The common scheme: an operator is a sum over variables (or subsets of
variables) of a rational prefactor times a q-shift, where the prefactors
share the Vandermonde determinant as denominator.  We clear that
denominator up front, work with raw (non-symmetric) polynomial data, and
divide the assembled numerator by the Vandermonde factors at the end.
Both the exactness of that division and the symmetry of the quotient are
verified on every application; failure of either means a bug, so they
raise rather than warn.

The `invert` flag replaces q and t by their reciprocals inside an
operator (prefactors, shifts and scalars alike).  Slot arguments such as
concrete eigenvalue points are never transformed; callers pass what they
mean.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations

from .errors import ResourceGuardError
from .partitions import Partition, rho_stat
from .ratfunc import (ONE, Q, RatFuncQT, T, elementary_symmetric, poly_lcm,
                      q_monomial, qt_monomial, rf, t_integer, t_monomial)
from .sympoly import (Raw, SymPoly, basis_poly, raw_add_into, raw_div_binomial,
                      raw_mul, raw_mul_var, raw_qderiv_var, raw_scale,
                      raw_shift_subset, raw_shift_var)

# subset symmetrization over S_n has n! * 2^n cost; past this it is a typo
MAX_FULL_SYMMETRIZE = 6


def qt_vals(invert: bool) -> tuple[RatFuncQT, RatFuncQT]:
    """The working values of q and t: the monomials or their reciprocals."""
    if invert:
        return q_monomial(-1), t_monomial(-1)
    return Q, T


# ---------------------------------------------------------------------------
# cached Vandermonde data

@lru_cache(maxsize=None)
def vandermonde_raw(n: int) -> "tuple":
    """Product of (x_j - x_k) over j < k, as a frozen raw item list."""
    cur: Raw = {(0,) * n: ONE}
    for j in range(n):
        for k in range(j + 1, n):
            binom: Raw = {}
            ej = [0] * n
            ej[j] = 1
            binom[tuple(ej)] = ONE
            ek = [0] * n
            ek[k] = 1
            binom[tuple(ek)] = rf(-1)
            cur = raw_mul(cur, binom)
    return tuple(cur.items())


def _vraw(n: int) -> Raw:
    return dict(vandermonde_raw(n))


@lru_cache(maxsize=None)
def _cleared_prefactor(n: int, i: int, invert: bool) -> "tuple":
    """Vandermonde times the i-th divided-difference prefactor (0-based).

    Equals (-1)^i * prod_{j<k, j,k != i} (x_j - x_k) * prod_{j != i}
    (t x_i - x_j); multiplying by it and later dividing by the full
    Vandermonde implements the prefactor exactly.
    """
    _, tv = qt_vals(invert)
    sign = ONE if i % 2 == 0 else rf(-1)
    cur: Raw = {(0,) * n: sign}
    for j in range(n):
        for k in range(j + 1, n):
            if j == i or k == i:
                continue
            binom: Raw = {}
            ej = [0] * n
            ej[j] = 1
            ek = [0] * n
            ek[k] = 1
            binom[tuple(ej)] = ONE
            binom[tuple(ek)] = rf(-1)
            cur = raw_mul(cur, binom)
    for j in range(n):
        if j == i:
            continue
        binom = {}
        ei = [0] * n
        ei[i] = 1
        ej = [0] * n
        ej[j] = 1
        binom[tuple(ei)] = tv
        binom[tuple(ej)] = rf(-1)
        cur = raw_mul(cur, binom)
    return tuple(cur.items())


def divide_vandermonde(raw: Raw, n: int) -> Raw:
    """Exact division by the Vandermonde product; raises on a remainder."""
    cur = raw
    for j in range(n):
        for k in range(j + 1, n):
            if not cur:
                return {}
            cur = raw_div_binomial(cur, j, k)
    return cur


# ---------------------------------------------------------------------------
# first-order operators: sums of prefactor * shift over single variables

def _assemble_single(f: SymPoly, invert: bool, mode: str) -> SymPoly:
    n = f.n_vars
    qv, tv = qt_vals(invert)
    fraw = f.to_raw()
    acc: Raw = {}
    for i in range(n):
        pre = dict(_cleared_prefactor(n, i, invert))
        if mode == "shift":
            piece = raw_shift_var(fraw, i, qv)
        else:
            piece = raw_qderiv_var(fraw, i, qv)
            if mode == "deriv_x":
                piece = raw_mul_var(piece, i)
        raw_add_into(acc, raw_mul(pre, piece))
    out = divide_vandermonde(acc, n)
    return SymPoly.from_raw(out, n)


def apply_lower(f: SymPoly, invert: bool = False) -> SymPoly:
    """Degree-lowering q-difference operator: sum of prefactor * q-derivative.

    Homogeneous of degree -1; on the principally normalized integral basis
    it acts as a sum over the lower covers of the indexing partition with
    the cover coefficients as weights.
    """
    return _assemble_single(f, invert, "deriv")


def apply_weight(f: SymPoly, invert: bool = False) -> SymPoly:
    """Degree-preserving operator, diagonal on the integral basis.

    t^(1-n) * sum of x_i * prefactor_i * q-derivative_i.  The eigenvalue on
    the basis element indexed by lam is the sum of (q,t) cell weights of
    lam (see rho_stat).
    """
    n = f.n_vars
    _, tv = qt_vals(invert)
    out = _assemble_single(f, invert, "deriv_x")
    return out.scale_rf(tv ** (1 - n))


def apply_shift1(f: SymPoly, invert: bool = False) -> SymPoly:
    """First symmetrized shift operator: sum of prefactor * q-shift.

    Triangular in the dominance order on the monomial basis; used to build
    the two-parameter basis by an eigenvector solve.
    """
    return _assemble_single(f, invert, "shift")


def apply_lower_alt(f: SymPoly, invert: bool = False) -> SymPoly:
    """Alternative assembly of apply_lower, kept as an independent oracle.

    Writes the operator as 1/(q-1) * sum_i (prefactor_i * shift_i - 1)/x_i;
    each numerator is divisible by x_i because the prefactor evaluates to 1
    at x_i = 0.
    """
    n = f.n_vars
    qv, _ = qt_vals(invert)
    fraw = f.to_raw()
    vr = _vraw(n)
    acc: Raw = {}
    for i in range(n):
        pre = dict(_cleared_prefactor(n, i, invert))
        num = raw_mul(pre, raw_shift_var(fraw, i, qv))
        raw_add_into(num, raw_mul(vr, fraw), sign=-1)
        # strip one power of x_i from every term; exactness is the point
        stripped: Raw = {}
        for e, c in num.items():
            if e[i] == 0:
                from .errors import InexactDivisionError
                raise InexactDivisionError(
                    "lowering-operator numerator not divisible by x_%d" % (i + 1))
            stripped[e[:i] + (e[i] - 1,) + e[i + 1:]] = c
        raw_add_into(acc, stripped)
    out = divide_vandermonde(acc, n)
    return SymPoly.from_raw(out, n).scale_rf((qv - ONE).inverse())


def apply_raise1(f: SymPoly, invert: bool = False) -> SymPoly:
    """Degree-raising operator: multiplication by e_1 scaled by 1/(1-q)."""
    qv, _ = qt_vals(invert)
    e1 = basis_poly("m", (1,), f.n_vars)
    return (f * e1).scale_rf((ONE - qv).inverse())


# ---------------------------------------------------------------------------
# the symmetrized shift family (generating-function operator in u)

@lru_cache(maxsize=None)
def _subset_alternant(n: int, subset: tuple[int, ...], invert: bool) -> "tuple":
    """sum over w in S_n of sgn(w) * t^(sum of staircase exponents over the
    subset) * x^(permuted staircase), as a frozen raw item list."""
    _, tv = qt_vals(invert)
    delta = tuple(n - 1 - i for i in range(n))
    acc: dict[tuple[int, ...], RatFuncQT] = {}
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        # parity by counting inversions
        inv = sum(1 for a in range(n) for b in range(a + 1, n)
                  if seen[a] > seen[b])
        sign = -1 if inv % 2 else 1
        expo = tuple(delta[perm[i]] for i in range(n))
        tpow = sum(expo[i] for i in subset)
        c = tv ** tpow if tpow else ONE
        if sign < 0:
            c = -c
        cur = acc.get(expo)
        acc[expo] = c if cur is None else cur + c
    out = {e: c for e, c in acc.items() if not c.is_zero()}
    if not subset:
        assert out == _vraw(n), "empty-subset alternant must be the Vandermonde"
    return tuple(out.items())


def apply_shift_family(f: SymPoly, invert: bool = False,
                       levels: "list[int] | None" = None) -> dict[int, SymPoly]:
    """All graded pieces of the generating-function shift operator.

    Returns {l: D_l f} where the full operator at parameter u is
    sum_l u^l D_l f.  Each piece is 1/V times a signed sum over size-l
    variable subsets of a t-weighted alternant times the subset q-shift.
    levels restricts which l are computed.
    """
    n = f.n_vars
    if n > MAX_FULL_SYMMETRIZE:
        raise ResourceGuardError(
            f"shift family symmetrizes over all {n}! permutations; "
            f"n is limited to {MAX_FULL_SYMMETRIZE}")
    qv, _ = qt_vals(invert)
    fraw = f.to_raw()
    want = list(range(n + 1)) if levels is None else sorted(set(levels))
    out: dict[int, SymPoly] = {}
    for l in want:
        if l < 0 or l > n:
            out[l] = SymPoly.zero(n)
            continue
        acc: Raw = {}
        for subset in combinations(range(n), l):
            alt = dict(_subset_alternant(n, subset, invert))
            shifted = raw_shift_subset(fraw, subset, qv)
            raw_add_into(acc, raw_mul(alt, shifted))
        quo = divide_vandermonde(acc, n)
        out[l] = SymPoly.from_raw(quo, n)
    return out


def apply_shift_genfun(f: SymPoly, uval: RatFuncQT, invert: bool = False) -> SymPoly:
    """The generating-function shift operator at a concrete parameter value."""
    fam = apply_shift_family(f, invert)
    out = SymPoly.zero(f.n_vars)
    upow = ONE
    for l in range(f.n_vars + 1):
        out = out + fam[l].scale_rf(upow)
        upow = upow * uval
    return out


# ---------------------------------------------------------------------------
# iterated commutators

def apply_ad_raise(l: int, f: SymPoly, invert: bool = False) -> SymPoly:
    """l-fold commutator of the weight operator acting on apply_raise1.

    ad^0 = apply_raise1; ad^l(B) = [weight, ad^(l-1)(B)].  Assembled by
    literal nesting so it stays an independent witness for the closed-form
    weights used elsewhere.
    """
    def rec(j: int, h: SymPoly) -> SymPoly:
        if j == 0:
            return apply_raise1(h, invert)
        return (apply_weight(rec(j - 1, h), invert)
                - rec(j - 1, apply_weight(h, invert)))
    return rec(l, f)


def apply_ad_lower(l: int, f: SymPoly, invert: bool = False) -> SymPoly:
    """l-fold commutator of the negated weight operator acting on apply_lower."""
    def rec(j: int, h: SymPoly) -> SymPoly:
        if j == 0:
            return apply_lower(h, invert)
        return (rec(j - 1, apply_weight(h, invert))
                - apply_weight(rec(j - 1, h), invert))
    return rec(l, f)


# ---------------------------------------------------------------------------
# spectra

def spectral_values(lam: Partition, n: int, invert: bool = False) -> list[RatFuncQT]:
    """The point q^(lam_i) t^(n-i), i = 1..n, that diagonalizes the family."""
    s = -1 if invert else 1
    vals = []
    for i in range(1, n + 1):
        p = lam[i - 1] if i <= len(lam) else 0
        vals.append(qt_monomial(s * p, s * (n - i)))
    return vals


def eigen_shift(l: int, lam: Partition, n: int, invert: bool = False) -> RatFuncQT:
    """Eigenvalue of the l-th shift operator on the basis element for lam."""
    return elementary_symmetric(spectral_values(lam, n, invert))[l]


def eigen_shift_genfun(lam: Partition, n: int, uval: RatFuncQT,
                       invert: bool = False) -> RatFuncQT:
    """Eigenvalue of the generating-function operator: prod (1 + u * point)."""
    out = ONE
    for v in spectral_values(lam, n, invert):
        out = out * (ONE + uval * v)
    return out


def eigen_weight(lam: Partition, invert: bool = False) -> RatFuncQT:
    """Eigenvalue of the weight operator: the (q,t) cell-weight sum."""
    return rho_stat(lam, invert)


def weight_from_shift1(f: SymPoly, invert: bool = False) -> SymPoly:
    """The weight operator assembled from the first shift operator.

    -(shift1 - [n]_t) / ((1-q) t^(n-1)); independent route used in tests.
    """
    n = f.n_vars
    qv, tv = qt_vals(invert)
    nt = t_integer(n, None if not invert else tv)
    g = apply_shift1(f, invert) - f.scale_rf(nt)
    scal = ((ONE - qv) * tv ** (n - 1)).inverse()
    return g.scale_rf(-scal)


# ---------------------------------------------------------------------------
# misc

def clear_denominators(f: SymPoly) -> tuple[SymPoly, RatFuncQT]:
    """(den * f, den) with den the lcm of the coefficient denominators."""
    from .ratfunc import PolyQT, RatFuncQT as RF
    L = PolyQT.one()
    for c in f.coeffs.values():
        L = poly_lcm(L, c.den)
    den = RF.from_poly(L)
    if den.is_one():
        return f, ONE
    return f.scale_rf(den), den
