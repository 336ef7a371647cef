"""Exact arithmetic over the field Q(q, t).

A polynomial in q and t with rational coefficients is stored sparsely as a
dict mapping (deg_q, deg_t) to a nonzero Fraction.  The canonical term order
is graded lexicographic on (deg_q, deg_t): first by total degree, then by
deg_q, then by deg_t.  PolyQT is a thin immutable wrapper around such a dict;
RatFuncQT is a reduced fraction of two PolyQT values.

Normal form of a RatFuncQT: gcd(num, den) = 1, den has integer coefficients
with content 1, and the leading coefficient of den (canonical order) is
positive.  Structural equality of normal forms is field equality.

The gcd is computed by content / primitive-part recursion: polynomials are
viewed in Z[t][q] and reduced with a primitive pseudo-remainder sequence.
Everything here is pure Python on Fraction and int; no external algebra
package is involved.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd

from .errors import InexactDivisionError

Term = tuple[int, int]
PolyDict = dict[Term, Fraction]

_F0 = Fraction(0)
_F1 = Fraction(1)


def _term_key(e: Term) -> tuple[int, int, int]:
    return (e[0] + e[1], e[0], e[1])


# ---------------------------------------------------------------------------
# dict-level polynomial arithmetic


def _padd(a: PolyDict, b: PolyDict) -> PolyDict:
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, _F0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out

def _psub(a: PolyDict, b: PolyDict) -> PolyDict:
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, _F0) - c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out

def _pneg(a: PolyDict) -> PolyDict:
    return {e: -c for e, c in a.items()}

def _pscale(a: PolyDict, c: Fraction) -> PolyDict:
    if not c:
        return {}
    return {e: c * x for e, x in a.items()}

def _pmul(a: PolyDict, b: PolyDict) -> PolyDict:
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    if len(a) == 1:
        # monomial factor: exponent shift; unit coefficients need no arithmetic
        ((ea, eta), ca), = a.items()
        if ca == 1:
            return {(eb + ea, etb + eta): cb for (eb, etb), cb in b.items()}
        if ca == -1:
            return {(eb + ea, etb + eta): -cb for (eb, etb), cb in b.items()}
        return {(eb + ea, etb + eta): ca * cb for (eb, etb), cb in b.items()}
    out: PolyDict = {}
    for (ea, eta), ca in a.items():
        for (eb, etb), cb in b.items():
            e = (ea + eb, eta + etb)
            s = out.get(e, _F0) + ca * cb
            if s:
                out[e] = s
            else:
                del out[e]
    return out

def _plead(a: PolyDict) -> Term:
    return max(a, key=_term_key)

def _pdiv_exact(a: PolyDict, b: PolyDict) -> PolyDict:
    """Quotient a/b when b divides a exactly; raises otherwise."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return {}
    if len(b) == 1:
        (eq, et), c = next(iter(b.items()))
        out: PolyDict = {}
        for (aq, at), ca in a.items():
            if aq < eq or at < et:
                raise InexactDivisionError("monomial does not divide term")
            out[(aq - eq, at - et)] = ca / c
        return out
    lb = _plead(b)
    cb = b[lb]
    rem = dict(a)
    quot: PolyDict = {}
    while rem:
        la = _plead(rem)
        eq, et = la[0] - lb[0], la[1] - lb[1]
        if eq < 0 or et < 0:
            raise InexactDivisionError("leading term not divisible")
        c = rem[la] / cb
        quot[(eq, et)] = c
        for (bq, bt), cbb in b.items():
            e = (bq + eq, bt + et)
            s = rem.get(e, _F0) - c * cbb
            if s:
                rem[e] = s
            else:
                rem.pop(e, None)
    return quot


# ---------------------------------------------------------------------------
# gcd over Z[t][q] with primitive pseudo-remainder sequences

def _uv_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a

def _uv_content(a: list[int]) -> int:
    g = 0
    for c in a:
        g = int_gcd(g, c)
        if g == 1:
            return 1
    return g

def _uv_primitive(a: list[int]) -> list[int]:
    if not a:
        return a
    g = _uv_content(a)
    if a[-1] < 0:
        g = -g
    if g != 1:
        a = [c // g for c in a]
    return a

def _uv_mul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return _uv_trim(out)

def _uv_div_exact(a: list[int], b: list[int]) -> list[int]:
    # exact division of integer polynomials, quotient has integer coeffs
    a = a[:]
    db = len(b) - 1
    lb = b[-1]
    out = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c, r = divmod(a[k + db], lb)
        if r:
            raise InexactDivisionError("inexact univariate division")
        out[k] = c
        if c:
            for j, cb in enumerate(b):
                a[k + j] -= c * cb
    if any(a):
        raise InexactDivisionError("inexact univariate division")
    return _uv_trim(out)

def _uv_pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    db = len(b) - 1
    lb = b[-1]
    r = a[:]
    while len(r) - 1 >= db and r:
        da = len(r) - 1
        c = r[-1]
        r = [lb * x for x in r]
        for j, cb in enumerate(b):
            r[j + da - db] -= c * cb
        r = _uv_trim(r)
    return r

def _uv_gcd(a: list[int], b: list[int]) -> list[int]:
    a = _uv_primitive(_uv_trim(a[:]))
    b = _uv_primitive(_uv_trim(b[:]))
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _uv_pseudo_rem(a, b)
        a, b = b, _uv_primitive(r)
    return a

# bivariate: dict deg_q -> integer t-coefficient list

def _bv_from_int_terms(terms: dict[Term, int]) -> dict[int, list[int]]:
    by_q: dict[int, list[int]] = {}
    for (dq, dt), c in terms.items():
        col = by_q.get(dq)
        if col is None:
            col = []
            by_q[dq] = col
        if len(col) <= dt:
            col.extend([0] * (dt + 1 - len(col)))
        col[dt] = c
    return {dq: _uv_trim(col) for dq, col in by_q.items() if any(col)}

def _bv_content(f: dict[int, list[int]]) -> list[int]:
    g: list[int] = []
    for col in f.values():
        g = _uv_gcd(g, col)
        if g == [1]:
            return g
    return g

def _bv_map(f: dict[int, list[int]], fn) -> dict[int, list[int]]:
    out = {}
    for dq, col in f.items():
        col = fn(col)
        if col:
            out[dq] = col
    return out

def _uv_eval(a: list[int], e: int) -> int:
    v = 0
    for c in reversed(a):
        v = v * e + c
    return v

def _bv_eval_t(f: dict[int, list[int]], e: int) -> list[int]:
    out = [0] * (max(f) + 1)
    for dq, col in f.items():
        out[dq] = _uv_eval(col, e)
    return _uv_trim(out)

def _bv_deg_t(f: dict[int, list[int]]) -> int:
    return max(len(col) for col in f.values()) - 1

def _bv_to_frac(f: dict[int, list[int]]) -> PolyDict:
    return {(dq, dt): Fraction(c) for dq, col in f.items() for dt, c in enumerate(col) if c}

def _interp_coeffs(xs: list[int], ys: list[Fraction]) -> list[Fraction]:
    """Newton interpolation through (xs[i], ys[i]); power-basis coefficients."""
    m = len(xs)
    dd = list(ys)
    for j in range(1, m):
        for i in range(m - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j])
    poly = [dd[m - 1]]
    for i in range(m - 2, -1, -1):
        nxt = [_F0] * (len(poly) + 1)
        for k, c in enumerate(poly):
            nxt[k + 1] += c
            nxt[k] -= c * xs[i]
        nxt[0] += dd[i]
        poly = nxt
    return poly

def _bv_primitive(f: dict[int, list[int]]) -> dict[int, list[int]]:
    if not f:
        return f
    cont = _bv_content(f)
    if cont == [1]:
        return f
    return _bv_map(f, lambda col: _uv_div_exact(col, cont))

def _int_terms(a: PolyDict) -> dict[Term, int]:
    """Scale a Fraction polynomial to coprime integer coefficients."""
    lcm = 1
    for c in a.values():
        d = c.denominator
        lcm = lcm // int_gcd(lcm, d) * d
    out = {e: int(c * lcm) for e, c in a.items()}
    g = 0
    for v in out.values():
        g = int_gcd(g, v)
        if g == 1:
            return out
    if g > 1:
        out = {e: v // g for e, v in out.items()}
    return out

def _pgcd(a: PolyDict, b: PolyDict) -> PolyDict:
    """gcd of two polynomials, integer-primitive with positive leading coeff."""
    if not a:
        return _normalize_primitive(b)
    if not b:
        return _normalize_primitive(a)
    if a == b:
        return _normalize_primitive(a)
    # common monomial factor first; it also lowers the working degrees
    mq = min(min(e[0] for e in a), min(e[0] for e in b))
    mt = min(min(e[1] for e in a), min(e[1] for e in b))
    if len(a) == 1 or len(b) == 1:
        # gcd with a monomial is a monomial
        gq = min(min(e[0] for e in a), min(e[0] for e in b))
        gt = min(min(e[1] for e in a), min(e[1] for e in b))
        return {(gq, gt): _F1}
    ia = _bv_from_int_terms(_int_terms(a if not (mq or mt) else {(e[0] - mq, e[1] - mt): c for e, c in a.items()}))
    ib = _bv_from_int_terms(_int_terms(b if not (mq or mt) else {(e[0] - mq, e[1] - mt): c for e, c in b.items()}))
    g = _bv_gcd(ia, ib)
    out: PolyDict = {}
    for dq, col in g.items():
        for dt, c in enumerate(col):
            if c:
                out[(dq + mq, dt + mt)] = Fraction(c)
    return out

def _bv_gcd_prim(fp: dict[int, list[int]], gp: dict[int, list[int]]) -> dict[int, list[int]]:
    """gcd of two primitive bivariate integer polys of positive q-degree.

    Evaluates both at integer t values, takes univariate gcds in q, and
    interpolates the images; a trial division certifies the candidate, so
    unlucky evaluation points only cost a retry.  A single point whose gcd
    image is constant already proves the inputs coprime, which is the
    common case when reducing fractions.
    """
    if fp == gp:
        return {dq: col[:] for dq, col in fp.items()}
    dq_f, dq_g = max(fp), max(gp)
    # the gcd's leading q-coefficient divides gamma, so gamma-scaled monic
    # images interpolate to an honest polynomial in t
    gamma = _uv_gcd(fp[dq_f], gp[dq_g])
    need = min(_bv_deg_t(fp), _bv_deg_t(gp)) + len(gamma)
    pf, pg = _bv_to_frac(fp), _bv_to_frac(gp)
    best = -1
    xs: list[int] = []
    images: list[list[Fraction]] = []
    e = 0
    for _ in range(1000):
        e = 1 - e if e <= 0 else -e  # 1, -1, 2, -2, ...
        fe = _bv_eval_t(fp, e)
        if len(fe) != dq_f + 1:
            continue  # leading coefficient vanished; degree unusable
        ge = _bv_eval_t(gp, e)
        if len(ge) != dq_g + 1:
            continue
        h = _uv_gcd(fe, ge)
        if len(h) == 1:
            return {0: [1]}
        if best < 0 or len(h) - 1 < best:
            best, xs, images = len(h) - 1, [], []
        if len(h) - 1 == best:
            s = Fraction(_uv_eval(gamma, e), h[-1])
            xs.append(e)
            images.append([c * s for c in h])
        if len(xs) < need:
            continue
        cols = [_interp_coeffs(xs, [img[k] for img in images]) for k in range(best + 1)]
        den = 1
        for col in cols:
            for c in col:
                d = c.denominator
                den = den // int_gcd(den, d) * d
        cand: dict[int, list[int]] = {}
        for k, col in enumerate(cols):
            icol = _uv_trim([int(c * den) for c in col])
            if icol:
                cand[k] = icol
        cand = _bv_primitive(cand)
        try:
            _pdiv_exact(pf, _bv_to_frac(cand))
            _pdiv_exact(pg, _bv_to_frac(cand))
        except InexactDivisionError:
            best, xs, images = -1, [], []  # unlucky points; retry with fresh ones
            continue
        return cand
    raise ArithmeticError("bivariate gcd interpolation did not converge")

def _bv_gcd(f: dict[int, list[int]], g: dict[int, list[int]]) -> dict[int, list[int]]:
    cf = _bv_content(f)
    cg = _bv_content(g)
    cont = _uv_gcd(cf, cg)
    fp = _bv_map(f, lambda col: _uv_div_exact(col, cf))
    gp = _bv_map(g, lambda col: _uv_div_exact(col, cg))
    if max(fp) == 0 or max(gp) == 0:
        # a primitive q-degree-0 polynomial is a unit against a primitive poly
        pp = {0: [1]}
    else:
        pp = _bv_gcd_prim(fp, gp)
    if cont == [1]:
        out = pp
    else:
        out = {dq: _uv_mul(col, cont) for dq, col in pp.items()}
    # sign: positive leading coefficient in graded-lex order
    lead = max(((dq, dt) for dq, col in out.items() for dt, c in enumerate(col) if c),
               key=_term_key)
    if out[lead[0]][lead[1]] < 0:
        out = {dq: [-c for c in col] for dq, col in out.items()}
    return out

def _normalize_primitive(a: PolyDict) -> PolyDict:
    if not a:
        return {}
    ia = _int_terms(a)
    lead = max(ia, key=_term_key)
    if ia[lead] < 0:
        ia = {e: -v for e, v in ia.items()}
    return {e: Fraction(v) for e, v in ia.items()}


# ---------------------------------------------------------------------------
# PolyQT

class PolyQT:
    """Sparse polynomial in q and t over Q.  Treat as immutable."""

    __slots__ = ("terms",)

    def __init__(self, terms: PolyDict):
        self.terms = terms

    @classmethod
    def from_terms(cls, terms) -> "PolyQT":
        out: PolyDict = {}
        for e, c in dict(terms).items():
            dq, dt = int(e[0]), int(e[1])
            if dq < 0 or dt < 0:
                raise ValueError("polynomial exponents must be nonnegative")
            c = Fraction(c)
            if c:
                out[(dq, dt)] = c
        return cls(out)

    @classmethod
    def zero(cls) -> "PolyQT":
        return cls({})

    @classmethod
    def one(cls) -> "PolyQT":
        return cls({(0, 0): _F1})

    @classmethod
    def monomial(cls, dq: int, dt: int, c=1) -> "PolyQT":
        c = Fraction(c)
        if dq < 0 or dt < 0:
            raise ValueError("polynomial exponents must be nonnegative")
        return cls({(dq, dt): c} if c else {})

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[Term, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: _term_key(kv[0]))

    def degree_q(self) -> int:
        return max((e[0] for e in self.terms), default=-1)

    def degree_t(self) -> int:
        return max((e[1] for e in self.terms), default=-1)

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyQT) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "PolyQT") -> "PolyQT":
        return PolyQT(_padd(self.terms, other.terms))

    def __sub__(self, other: "PolyQT") -> "PolyQT":
        return PolyQT(_psub(self.terms, other.terms))

    def __neg__(self) -> "PolyQT":
        return PolyQT(_pneg(self.terms))

    def __mul__(self, other: "PolyQT") -> "PolyQT":
        return PolyQT(_pmul(self.terms, other.terms))

    def __repr__(self):
        return f"PolyQT({render_poly(self.terms)})"


_PONE: PolyDict = {(0, 0): _F1}


def _poly_text_term(e: Term, c: Fraction) -> str:
    dq, dt = e
    parts = []
    if dq:
        parts.append("q" if dq == 1 else f"q^{dq}")
    if dt:
        parts.append("t" if dt == 1 else f"t^{dt}")
    mono = "*".join(parts)
    ac = abs(c)
    if not mono:
        return str(ac)
    if ac == 1:
        return mono
    return f"{ac}*{mono}"

def render_poly(terms: PolyDict) -> str:
    """Canonical text form, graded-lex ascending: ``1 - 2*q*t + q^2*t^2``."""
    if not terms:
        return "0"
    items = sorted(terms.items(), key=lambda kv: _term_key(kv[0]))
    out = []
    for i, (e, c) in enumerate(items):
        body = _poly_text_term(e, c)
        if i == 0:
            out.append(body if c > 0 else "-" + body)
        else:
            out.append((" + " if c > 0 else " - ") + body)
    return "".join(out)

def poly_to_json(terms: PolyDict) -> list[list]:
    return [[e[0], e[1], str(c)] for e, c in sorted(terms.items(), key=lambda kv: _term_key(kv[0]))]

def poly_from_json(data) -> PolyDict:
    out: PolyDict = {}
    for dq, dt, c in data:
        out[(int(dq), int(dt))] = Fraction(c)
    return out


# ---------------------------------------------------------------------------
# RatFuncQT

class RatFuncQT:
    """Reduced fraction of two PolyQT values; field element of Q(q, t)."""

    __slots__ = ("num", "den")

    def __init__(self, num: PolyQT, den: PolyQT, _normalized: bool = False):
        if not _normalized:
            r = _make(num.terms, den.terms)
            self.num, self.den = r.num, r.den
        else:
            self.num, self.den = num, den

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_int(cls, n: int) -> "RatFuncQT":
        return cls.from_fraction(Fraction(n))

    @classmethod
    def from_fraction(cls, f) -> "RatFuncQT":
        f = Fraction(f)
        if not f:
            return ZERO
        return cls(PolyQT({(0, 0): f}), PolyQT(dict(_PONE)), _normalized=True)

    @classmethod
    def from_poly(cls, p: PolyQT) -> "RatFuncQT":
        return cls(PolyQT(dict(p.terms)), PolyQT(dict(_PONE)), _normalized=True)

    @classmethod
    def monomial(cls, dq: int, dt: int, c=1) -> "RatFuncQT":
        """c * q^dq * t^dt with exponents of either sign."""
        c = Fraction(c)
        if not c:
            return ZERO
        num = {(max(dq, 0), max(dt, 0)): c}
        den = {(max(-dq, 0), max(-dt, 0)): _F1}
        return _make_reduced(num, den)

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num.terms

    def is_one(self) -> bool:
        return self.num.terms == _PONE and self.den.terms == _PONE

    def is_polynomial(self) -> bool:
        return self.den.terms == _PONE

    def __bool__(self) -> bool:
        return bool(self.num.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFuncQT):
            if isinstance(other, (int, Fraction)):
                other = RatFuncQT.from_fraction(other)
            else:
                return NotImplemented
        return self.num.terms == other.num.terms and self.den.terms == other.den.terms

    def __hash__(self):
        return hash((frozenset(self.num.terms.items()), frozenset(self.den.terms.items())))

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "RatFuncQT") -> "RatFuncQT":
        a, b = self.num.terms, self.den.terms
        c, d = other.num.terms, other.den.terms
        if not a:
            return other
        if not c:
            return self
        if b == d:
            s = _padd(a, c)
            if b == _PONE:
                return _make_reduced(s, dict(_PONE))
            return _make(s, b)
        g0 = _pgcd(b, d)
        if g0 == _PONE:
            return _make_reduced(_padd(_pmul(a, d), _pmul(c, b)), _pmul(b, d))
        b1 = _pdiv_exact(b, g0)
        d1 = _pdiv_exact(d, g0)
        s = _padd(_pmul(a, d1), _pmul(c, b1))
        if not s:
            return ZERO
        g1 = _pgcd(s, g0)
        if g1 == _PONE:
            return _make_reduced(s, _pmul(_pmul(b1, g0), d1))
        return _make_reduced(_pdiv_exact(s, g1), _pmul(_pdiv_exact(b, g1), d1))

    def __sub__(self, other: "RatFuncQT") -> "RatFuncQT":
        return self + (-other)

    def __neg__(self) -> "RatFuncQT":
        if not self.num.terms:
            return self
        return RatFuncQT(PolyQT(_pneg(self.num.terms)), self.den, _normalized=True)

    def __mul__(self, other: "RatFuncQT") -> "RatFuncQT":
        a, b = self.num.terms, self.den.terms
        c, d = other.num.terms, other.den.terms
        if not a or not c:
            return ZERO
        if b == _PONE and d == _PONE:
            return _make_reduced(_pmul(a, c), dict(_PONE))
        g1 = _pgcd(a, d)
        g2 = _pgcd(c, b)
        if g1 != _PONE:
            a = _pdiv_exact(a, g1)
            d = _pdiv_exact(d, g1)
        if g2 != _PONE:
            c = _pdiv_exact(c, g2)
            b = _pdiv_exact(b, g2)
        return _make_reduced(_pmul(a, c), _pmul(b, d))

    def __truediv__(self, other: "RatFuncQT") -> "RatFuncQT":
        return self * other.inverse()

    def inverse(self) -> "RatFuncQT":
        if not self.num.terms:
            raise ZeroDivisionError("inverse of zero rational function")
        return _make_reduced(dict(self.den.terms), dict(self.num.terms))

    def __pow__(self, k: int) -> "RatFuncQT":
        if k == 0:
            return ONE
        if k < 0:
            return self.inverse() ** (-k)
        base = self
        out = None
        while k:
            if k & 1:
                out = base if out is None else out * base
            k >>= 1
            if k:
                base = RatFuncQT(PolyQT(_pmul(base.num.terms, base.num.terms)),
                                 PolyQT(_pmul(base.den.terms, base.den.terms)),
                                 _normalized=True)
        return out

    def scale(self, c) -> "RatFuncQT":
        c = Fraction(c)
        if not c or not self.num.terms:
            return ZERO
        return _make_reduced(_pscale(self.num.terms, c), dict(self.den.terms))

    # -- conversions --------------------------------------------------------

    def as_fraction(self) -> Fraction:
        """The constant value, if this element is a rational constant."""
        if not self.num.terms:
            return _F0
        if self.num.terms.keys() == {(0, 0)} and self.den.terms.keys() == {(0, 0)}:
            return self.num.terms[(0, 0)] / self.den.terms[(0, 0)]
        raise ValueError("not a constant: " + self.render())

    def render(self) -> str:
        if not self.num.terms:
            return "0"
        nt = render_poly(self.num.terms)
        if self.den.terms == _PONE:
            return nt
        if len(self.num.terms) > 1:
            nt = f"({nt})"
        return f"{nt}/({render_poly(self.den.terms)})"

    def to_json(self) -> dict:
        return {"num": poly_to_json(self.num.terms), "den": poly_to_json(self.den.terms)}

    @classmethod
    def from_json(cls, data) -> "RatFuncQT":
        return _make(poly_from_json(data["num"]), poly_from_json(data["den"]))

    def __repr__(self):
        return f"RatFuncQT({self.render()})"


def _make_reduced(num: PolyDict, den: PolyDict) -> RatFuncQT:
    """Build from an already gcd-reduced pair; only rescales the denominator."""
    if not num:
        return ZERO
    if not den:
        raise ZeroDivisionError("zero denominator")
    if den == _PONE:
        return RatFuncQT(PolyQT(num), PolyQT(dict(_PONE)), _normalized=True)
    iden = _int_terms(den)
    lead = max(iden, key=_term_key)
    if iden[lead] < 0:
        iden = {e: -v for e, v in iden.items()}
    # num picks up the inverse of the rescaling applied to den
    e0 = next(iter(den))
    ratio = Fraction(iden[e0], 1) / den[e0]     # den_int = ratio * den
    num = _pscale(num, ratio)
    return RatFuncQT(PolyQT(num), PolyQT({e: Fraction(v) for e, v in iden.items()}),
                     _normalized=True)

def _make(num: PolyDict, den: PolyDict) -> RatFuncQT:
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return ZERO
    # strip the joint monomial content
    mq = min(min(e[0] for e in num), min(e[0] for e in den))
    mt = min(min(e[1] for e in num), min(e[1] for e in den))
    if mq or mt:
        num = {(e[0] - mq, e[1] - mt): c for e, c in num.items()}
        den = {(e[0] - mq, e[1] - mt): c for e, c in den.items()}
    if den == _PONE or len(den) == 1 or len(num) == 1:
        if den != _PONE and (len(den) == 1 or len(num) == 1):
            g = _pgcd(num, den)
            if g != _PONE:
                num = _pdiv_exact(num, g)
                den = _pdiv_exact(den, g)
        return _make_reduced(num, den)
    g = _pgcd(num, den)
    if g != _PONE:
        num = _pdiv_exact(num, g)
        den = _pdiv_exact(den, g)
    return _make_reduced(num, den)


ZERO = RatFuncQT(PolyQT({}), PolyQT(dict(_PONE)), _normalized=True)
ONE = RatFuncQT(PolyQT(dict(_PONE)), PolyQT(dict(_PONE)), _normalized=True)
Q = RatFuncQT(PolyQT({(1, 0): _F1}), PolyQT(dict(_PONE)), _normalized=True)
T = RatFuncQT(PolyQT({(0, 1): _F1}), PolyQT(dict(_PONE)), _normalized=True)

def rf(x) -> RatFuncQT:
    """Coerce an int, Fraction or RatFuncQT to RatFuncQT."""
    if isinstance(x, RatFuncQT):
        return x
    return RatFuncQT.from_fraction(x)

def q_monomial(k: int) -> RatFuncQT:
    return RatFuncQT.monomial(k, 0)

def t_monomial(k: int) -> RatFuncQT:
    return RatFuncQT.monomial(0, k)

def qt_monomial(dq: int, dt: int, c=1) -> RatFuncQT:
    return RatFuncQT.monomial(dq, dt, c)

def one_minus(x: RatFuncQT) -> RatFuncQT:
    return ONE - x

def q_integer(m: int, qval: RatFuncQT | None = None) -> RatFuncQT:
    """1 + q + ... + q^(m-1), optionally at a substituted q value."""
    if m < 0:
        raise ValueError("q-integer of negative order")
    if qval is None:
        return RatFuncQT.from_poly(PolyQT({(j, 0): _F1 for j in range(m)}))
    out = ZERO
    p = ONE
    for _ in range(m):
        out = out + p
        p = p * qval
    return out

def t_integer(m: int, tval: RatFuncQT | None = None) -> RatFuncQT:
    if tval is None:
        return RatFuncQT.from_poly(PolyQT({(0, j): _F1 for j in range(m)}))
    return q_integer(m, tval)


# ---------------------------------------------------------------------------
# substitution and q -> 1 limits

def _eval_poly(terms: PolyDict, qv: RatFuncQT, tv: RatFuncQT) -> RatFuncQT:
    if not terms:
        return ZERO
    qpow: dict[int, RatFuncQT] = {0: ONE}
    tpow: dict[int, RatFuncQT] = {0: ONE}
    def power(cache, base, k):
        v = cache.get(k)
        if v is None:
            v = base ** k
            cache[k] = v
        return v
    out = ZERO
    for (dq, dt), c in sorted(terms.items(), key=lambda kv: _term_key(kv[0])):
        out = out + (power(qpow, qv, dq) * power(tpow, tv, dt)).scale(c)
    return out

def substitute(f: RatFuncQT, qval: RatFuncQT | None = None,
               tval: RatFuncQT | None = None) -> RatFuncQT:
    """Evaluate f at q = qval, t = tval (missing bindings stay symbolic).

    Raises ZeroDivisionError when the denominator vanishes at the binding.
    """
    qv = Q if qval is None else rf(qval)
    tv = T if tval is None else rf(tval)
    den = _eval_poly(f.den.terms, qv, tv)
    if den.is_zero():
        raise ZeroDivisionError("substitution hits a pole of the denominator")
    if f.is_zero():
        return ZERO
    return _eval_poly(f.num.terms, qv, tv) / den

def _strip_one_minus_q(terms: PolyDict) -> tuple[int, PolyDict]:
    """Write terms = (1-q)^k * rest with (1-q) not dividing rest."""
    k = 0
    cur = terms
    while cur:
        # exact division by (1-q), column by column in t
        cols: dict[int, dict[int, Fraction]] = {}
        for (dq, dt), c in cur.items():
            cols.setdefault(dt, {})[dq] = c
        ok = all(sum(col.values()) == 0 for col in cols.values())
        if not ok:
            return k, cur
        nxt: PolyDict = {}
        for dt, col in cols.items():
            run = _F0
            top = max(col)
            for dq in range(top):
                run += col.get(dq, _F0)
                if run:
                    nxt[(dq, dt)] = run
        cur = nxt
        k += 1
    return k, cur

def _eval_at_q1(terms: PolyDict) -> "PolyDict":
    out: PolyDict = {}
    for (dq, dt), c in terms.items():
        e = (0, dt)
        s = out.get(e, _F0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out

def limit_q1(f: RatFuncQT, scale_order: int = 0) -> Fraction:
    """Value of f * (1-q)^scale_order at q = 1 for a t-free f.

    The scaled limit must be finite and nonzero; otherwise LimitError reports
    the actual (1-q)-valuation so the caller can adjust.
    """
    from .errors import LimitError
    if f.num.degree_t() > 0 or f.den.degree_t() > 0:
        raise LimitError("limit_q1 requires an element of Q(q)")
    if f.is_zero():
        raise LimitError("limit of zero is zero at every order")
    vn, rn = _strip_one_minus_q(f.num.terms)
    vd, rd = _strip_one_minus_q(f.den.terms)
    val = vn - vd + scale_order
    if val != 0:
        raise LimitError(
            f"(1-q)-valuation is {vn - vd}, expected {-scale_order}")
    num1 = _eval_at_q1(rn)
    den1 = _eval_at_q1(rd)
    return num1[(0, 0)] / den1[(0, 0)]

def limit_q1_weak(f: RatFuncQT, scale_order: int) -> Fraction:
    """Like limit_q1 but a limit of zero is allowed (returns 0)."""
    from .errors import LimitError
    if f.num.degree_t() > 0 or f.den.degree_t() > 0:
        raise LimitError("limit_q1 requires an element of Q(q)")
    if f.is_zero():
        return _F0
    vn, rn = _strip_one_minus_q(f.num.terms)
    vd, rd = _strip_one_minus_q(f.den.terms)
    val = vn - vd + scale_order
    if val > 0:
        return _F0
    if val < 0:
        raise LimitError(f"(1-q)-valuation is {vn - vd}, pole of order {-val} remains")
    num1 = _eval_at_q1(rn)
    den1 = _eval_at_q1(rd)
    return num1[(0, 0)] / den1[(0, 0)]

def invert_qt(f: RatFuncQT) -> RatFuncQT:
    """Substitute q -> 1/q and t -> 1/t."""
    qinv = RatFuncQT.monomial(-1, 0)
    tinv = RatFuncQT.monomial(0, -1)
    return substitute(f, qinv, tinv)

def poly_lcm(a: PolyQT, b: PolyQT) -> PolyQT:
    """Least common multiple, primitive with positive leading coefficient."""
    if a.is_zero() or b.is_zero():
        return PolyQT.zero()
    g = _pgcd(a.terms, b.terms)
    quo = _pdiv_exact(_normalize_primitive(a.terms), g)
    return PolyQT(_normalize_primitive(_pmul(quo, _normalize_primitive(b.terms))))

def elementary_symmetric(values: list[RatFuncQT]) -> list[RatFuncQT]:
    """[e_0, e_1, ..., e_r] of the given field elements."""
    es = [ONE]
    for v in values:
        es.append(ZERO)
        for j in range(len(es) - 1, 0, -1):
            es[j] = es[j] + es[j - 1] * v
    return es
