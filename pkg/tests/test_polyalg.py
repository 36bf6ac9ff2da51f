import pytest
import sympy
from hypothesis import given, settings, strategies as st

from lndkit.errors import DivisorZero, NotDivisible
from lndkit.poly import Poly
from lndkit.polyalg import divides, exact_divide, gcd_multivar, nth_root

from helpers import CIRCLE, GENS, Q, QT, RINGS, polys, to_sympy

pairs = st.sampled_from(RINGS).flatmap(lambda r: st.tuples(polys(r, max_terms=3), polys(r, max_terms=3, nonzero=True)))


@given(pairs)
def test_exact_divide_product(fg):
    f, g = fg
    assert exact_divide(f * g, g) == f
    assert divides(g, f * g)


def test_exact_divide_errors():
    x, y, z = Poly.gens(Q, 3)
    with pytest.raises(NotDivisible):
        exact_divide(x * y + 1, x)
    with pytest.raises(DivisorZero):
        exact_divide(x, Poly.zero(Q, 3))
    assert not divides(x, y + 1)


def test_exact_divide_circle_by_non_monomial():
    x, y, z = Poly.gens(CIRCLE, 3)
    w1, w2 = Poly.symbol(CIRCLE, 3, "w1"), Poly.symbol(CIRCLE, 3, "w2")
    g = w1 * x + (1 - w2) * y
    f = (x + z) * ((1 + w2) * x + w1 * y)
    assert exact_divide(f * g, g) == f


@settings(max_examples=40)
@given(polys(Q, max_terms=3, max_exp=2, nonzero=True), polys(Q, max_terms=3, max_exp=2, nonzero=True),
       polys(Q, max_terms=2, max_exp=2, nonzero=True))
def test_gcd_matches_sympy(f, g, h):
    got = gcd_multivar(f * h, g * h)
    expected = sympy.gcd(to_sympy(f * h), to_sympy(g * h))
    # equal up to a nonzero rational factor
    ratio = sympy.cancel(to_sympy(got).as_expr() / expected.as_expr())
    assert ratio.is_Rational and ratio != 0
    assert gcd_multivar(f * h, g * h) == gcd_multivar(g * h, f * h)


@given(st.sampled_from(RINGS).flatmap(lambda r: polys(r, max_terms=3, max_exp=2, nonzero=True)),
       st.sampled_from([2, 3, 5]))
def test_nth_root_recovers_base(g, n):
    r = nth_root(g ** n, n)
    assert r is not None
    assert r == g or (n % 2 == 0 and r == -g)
    assert r ** n == g ** n


def test_nth_root_rejects_non_powers():
    x, y, z = Poly.gens(Q, 3)
    assert nth_root(x ** 2 + y, 2) is None
    assert nth_root(-(x ** 2), 2) is None
    assert nth_root(-(x ** 3), 3) == -x
    X, Y, _ = Poly.gens(CIRCLE, 3)
    w1, w2 = Poly.symbol(CIRCLE, 3, "w1"), Poly.symbol(CIRCLE, 3, "w2")
    # (w1 X + (1 - w2) Y)^2, expanded and reduced, has a square root in the ring
    L = w1 * X + (1 - w2) * Y
    assert nth_root(L ** 2, 2) in (L, -L)
    assert nth_root(w1 * X ** 2, 2) is None


def test_nth_root_sign_convention():
    t = Poly.symbol(QT, 3, "t")
    x = Poly.var(QT, 3, 0)
    assert nth_root((t * x - 1) ** 2, 2) == t * x - 1
    assert nth_root((1 - t * x) ** 4, 4) == t * x - 1
