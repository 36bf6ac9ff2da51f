"""Hypothesis strategies and a sympy oracle shared by the test modules."""
from fractions import Fraction

import sympy
from hypothesis import strategies as st

from lndkit.poly import Poly
from lndkit.ring import CircleElem, RingId, UniPoly

Q, QT, CIRCLE = RingId.Q, RingId.POLY_T, RingId.CIRCLE
RINGS = [Q, QT, CIRCLE]
SX, SY, SZ, ST, SW1, SW2 = sympy.symbols("x y z t w1 w2")
SVARS = (SX, SY, SZ)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)
small_ints = st.integers(-4, 4)


@st.composite
def ring_elems(draw, ring, nonzero=False, max_deg=2):
    def uni():
        return UniPoly(draw(st.lists(small_ints, max_size=max_deg + 1)))

    if ring is Q:
        c = draw(rationals)
        zero = c == 0
    elif ring is QT:
        c = UniPoly([draw(rationals)] + draw(st.lists(small_ints, max_size=max_deg)))
        zero = c.is_zero()
    else:
        c = CircleElem(uni(), uni())
        zero = c.is_zero()
    if nonzero and zero:
        # a fixed nonzero fallback instead of rejection sampling
        c = 1 if ring is Q else (UniPoly([1]) if ring is QT else CircleElem(UniPoly([1]), UniPoly([])))
    return c


@st.composite
def polys(draw, ring, nvars=3, max_terms=4, max_exp=3, nonzero=False):
    terms = {}
    for _ in range(draw(st.integers(1 if nonzero else 0, max_terms))):
        e = tuple(draw(st.integers(0, max_exp)) for _ in range(nvars))
        terms[e] = draw(ring_elems(ring, nonzero=True))
    p = Poly(ring, nvars, terms)
    if nonzero and p.is_zero():
        p = Poly.one(ring, nvars)
    return p


def ring_polys(**kw):
    return st.sampled_from(RINGS).flatmap(lambda r: polys(r, **kw))


GENS = (SW1, SX, SY, SZ, ST, SW2)
CIRCLE_REL = None


def _q(v):
    v = Fraction(v)
    return sympy.Rational(v.numerator, v.denominator)


def _elem_terms(ring, c):
    """``{(w1, t, w2) exponents: rational}`` for a coefficient."""
    if ring is Q:
        return {(0, 0, 0): _q(c)}
    if ring is QT:
        return {(0, i, 0): _q(v) for i, v in enumerate(c.coeffs) if v}
    out = {(0, 0, i): _q(v) for i, v in enumerate(c.a.coeffs) if v}
    out.update({(1, 0, i): _q(v) for i, v in enumerate(c.b.coeffs) if v})
    return out


def to_sympy(f: Poly) -> sympy.Poly:
    """The polynomial as a sympy Poly over QQ in (w1, x, y, z, t, w2)."""
    d = {}
    for e, c in f.terms.items():
        e = tuple(e) + (0,) * (3 - len(e))
        for (a, t, b), v in _elem_terms(f.ring, c).items():
            key = (a, e[0], e[1], e[2], t, b)
            d[key] = d.get(key, 0) + v
    return sympy.Poly.from_dict(d, *GENS, domain=sympy.QQ)


def sympy_canonical(p: sympy.Poly, ring) -> sympy.Poly:
    if ring is CIRCLE:
        rel = sympy.Poly(SW1 ** 2 + SW2 ** 2 - 1, *GENS, domain=sympy.QQ)
        p = p.rem(rel)
    return p


def same(f: Poly, p) -> bool:
    if not isinstance(p, sympy.Poly):
        p = sympy.Poly(p, *GENS, domain=sympy.QQ)
    return sympy_canonical(p, f.ring) == to_sympy(f)
