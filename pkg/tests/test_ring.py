from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from lndkit.errors import NotDivisible
from lndkit.ring import (
    CircleElem, RingId, UniPoly, int_nth_root, rat, rational_nth_root, ring_is_unit, uni_gcd_bezout,
)

from helpers import ST, small_ints


def uni(*cs):
    return UniPoly(cs)


def to_sym(p: UniPoly):
    return sum(sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) * ST ** i for i, c in enumerate(p.coeffs))


unipolys = st.lists(small_ints, max_size=5).map(UniPoly)


def test_rat_canonicalizes_integral_fractions():
    assert type(rat(Fraction(4, 2))) is int
    assert rat(Fraction(1, 2)) == Fraction(1, 2)


def test_integer_and_rational_roots():
    assert int_nth_root(1 << 90, 3) == 1 << 30
    assert int_nth_root(10, 2) is None
    assert rational_nth_root(Fraction(-8, 27), 3) == Fraction(-2, 3)
    assert rational_nth_root(-4, 2) is None


def test_unipoly_basics():
    p = uni(1, 0, 2)
    assert p.degree() == 2 and p.lc() == 2
    assert (p * p).coeffs == (1, 0, 4, 0, 4)
    assert p(3) == 19
    assert uni(0, 0).is_zero() and uni().degree() < 0
    assert uni(2, 4).monic() == uni(Fraction(1, 2), 1)
    assert p.to_str("t") == "2*t^2 + 1"


@given(unipolys, unipolys)
def test_divmod_matches_sympy(a, b):
    if b.is_zero():
        return
    q, r = a.divmod(b)
    sq, sr = sympy.div(to_sym(a), to_sym(b), ST)
    assert sympy.expand(to_sym(q) - sq) == 0 and sympy.expand(to_sym(r) - sr) == 0


@given(unipolys, unipolys)
def test_bezout_matches_sympy_gcd(a, b):
    if a.is_zero() and b.is_zero():
        return
    g, u, v = uni_gcd_bezout(a, b)
    assert u * a + v * b == g
    assert g.lc() == 1
    assert sympy.expand(to_sym(g) - sympy.monic(sympy.gcd(to_sym(a), to_sym(b)), ST)) == 0


def test_exact_div_raises():
    with pytest.raises(NotDivisible):
        uni(1, 0, 1).exact_div(uni(1, 1))


def test_circle_relation_and_norm():
    w1, w2 = CircleElem.w1(), CircleElem.w2()
    assert w1 * w1 + w2 * w2 == CircleElem.const(1)
    z = CircleElem(uni(1, 2), uni(3))
    assert z * z.conj() == CircleElem(z.norm())
    # norm(a + b w1) = a^2 - b^2 (1 - w2^2), frozen from sympy
    assert z.norm() == uni(-8, 4, 13)


def test_circle_exact_division():
    w1, w2 = CircleElem.w1(), CircleElem.w2()
    one = CircleElem.const(1)
    # (1 - w2)(1 + w2) = w1^2
    assert ((one - w2) * (one + w2)).exact_div(w1) == w1
    with pytest.raises(NotDivisible):
        one.exact_div(w1)


def test_units():
    assert ring_is_unit(Fraction(3))[0]
    assert ring_is_unit(uni(5))[0] and not ring_is_unit(uni(0, 1))[0]
    assert not ring_is_unit(CircleElem.w1())[0]
    assert ring_is_unit(CircleElem.const(-2))[0]


def test_ring_parse():
    assert RingId.parse("q[t]") is RingId.POLY_T
    with pytest.raises(ValueError):
        RingId.parse("Z")
