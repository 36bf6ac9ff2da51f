from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from lndkit.errors import RingMismatch
from lndkit.poly import Poly, is_homogeneous, support_points, top_part, weighted_degree, weighted_parts, weighted_top_degree
from lndkit.ring import RingId

from helpers import CIRCLE, Q, QT, RINGS, SVARS, polys, ring_polys, same, to_sympy

pairs = st.sampled_from(RINGS).flatmap(lambda r: st.tuples(polys(r), polys(r)))


@given(pairs)
def test_ring_operations_match_sympy(fg):
    f, g = fg
    sf, sg = to_sympy(f), to_sympy(g)
    assert same(f + g, sf + sg)
    assert same(f - g, sf - sg)
    assert same(f * g, sf * sg)


@given(ring_polys(max_terms=3, max_exp=2), st.integers(0, 3))
def test_power_matches_sympy(f, n):
    assert same(f ** n, to_sympy(f) ** n)


@given(ring_polys(), st.integers(0, 2))
def test_diff_matches_sympy(f, i):
    assert same(f.diff(i), to_sympy(f).diff(SVARS[i]))


def test_symbols_and_printing():
    x, y, z = Poly.gens(QT, 3)
    t = Poly.symbol(QT, 3, "t")
    f = x * (t * z + x) - t ** 2 * y ** 2
    assert f.to_str() == "x^2 + t*x*z - t^2*y^2"
    w1, w2 = Poly.symbol(CIRCLE, 3, "w1"), Poly.symbol(CIRCLE, 3, "w2")
    assert (w1 * w1 + w2 * w2).to_str() == "1"
    X = Poly.var(CIRCLE, 3, 0)
    assert ((1 - w2) * X + w1 * X).to_str() == "(w1 - w2 + 1)*x"
    assert (x * Fraction(1, 2) - 3).to_str() == "1/2*x - 3"


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        Poly.var(Q, 3, 0) + Poly.var(QT, 3, 0)


def test_degrees_and_terms():
    x, y, z = Poly.gens(Q, 3)
    f = x ** 2 * y + 3 * z ** 4 - y
    assert f.degree(2) == 4 and f.min_degree(1) == 0 and f.total_degree() == 4
    assert f.variables() == {0, 1, 2}
    assert f.coeff((0, 0, 4)) == 3
    assert weighted_top_degree(f, (1, 2, 0)) == 4 and weighted_degree((2, 1, 0), (1, 2, 0)) == 4
    assert set(weighted_parts(f, (1, 1, 1))) == {1, 3, 4}
    assert is_homogeneous(x * y + z ** 2, (1, 1, 1)) == 2
    assert is_homogeneous(f, (1, 1, 1)) is None
    assert top_part(f, (1, 1, 1)) == 3 * z ** 4
    assert sorted(support_points(x * y ** 2 + z, (1, 2))) == [(0, 0), (0, 1), (2, 0)]


@given(ring_polys(max_terms=3, max_exp=2))
def test_substitution_matches_sympy(f):
    x, y, z = Poly.gens(f.ring, 3)
    img = {0: y + z, 1: x * x, 2: z - x}
    sub = {SVARS[0]: SVARS[1] + SVARS[2], SVARS[1]: SVARS[0] ** 2, SVARS[2]: SVARS[2] - SVARS[0]}
    assert same(f.subs(img), to_sympy(f).as_expr().subs(sub, simultaneous=True))


def test_embed_and_restrict():
    x, y = Poly.gens(Q, 2)
    f = x * y + 1
    g = f.embed(3, (0, 2))
    X, Y, Z = Poly.gens(Q, 3)
    assert g == X * Z + 1
    assert g.restrict_to((0, 2)) == f


def test_hash_and_equality_are_canonical():
    x, y, _ = Poly.gens(Q, 3)
    a = (x + y) * (x - y)
    b = x * x - y * y
    assert a == b and hash(a) == hash(b)
    assert Poly(Q, 3, {(1, 0, 0): Fraction(2, 2)}) == x
