import sympy
from hypothesis import given, strategies as st

from lndkit.constructions import newton_corpus
from lndkit.derivation import d_apply
from lndkit.newton import convex_hull, newton_polygon, np_check
from lndkit.poly import Poly

from helpers import Q

points = st.lists(st.tuples(st.integers(0, 8), st.integers(0, 8)), min_size=1, max_size=12)


@given(points)
def test_hull_matches_sympy(pts):
    hull = convex_hull(pts)
    sp = sympy.convex_hull(*[sympy.Point(*p) for p in set(pts)])
    if isinstance(sp, sympy.Polygon):
        expected = {(int(v.x), int(v.y)) for v in sp.vertices}
    elif isinstance(sp, sympy.Segment):
        expected = {(int(v.x), int(v.y)) for v in sp.points}
    else:
        expected = {(int(sp.x), int(sp.y))}
    assert set(hull) == expected


def test_spec_examples():
    x, y, z = Poly.gens(Q, 3)
    np1 = newton_polygon(y ** 2 + x * z, (1, 2))
    assert set(np1.vertices) == {(0, 0), (2, 0), (0, 1)} and np_check(np1)
    np2 = newton_polygon((y ** 2 + x * z) ** 2 + x ** 3 * y, (1, 2))
    assert set(np2.vertices) == {(0, 0), (4, 0), (0, 2)} and np_check(np2)
    np3 = newton_polygon(y ** 3 + z ** 2 + y * z ** 2, (1, 2))
    assert (1, 2) in np3.vertices and not np_check(np3)


def test_flat_and_non_dividing():
    x, y, z = Poly.gens(Q, 3)
    assert np_check(newton_polygon(x + y ** 3, (1, 2)))  # segment (0,0)-(3,0)
    assert not np_check(newton_polygon(y ** 2 + z ** 3 + x, (1, 2)))  # 2 and 3


def test_corpus_elements_are_kernel_elements():
    corpus = newton_corpus()
    assert len(corpus) >= 20
    for el in corpus:
        assert d_apply(el.D, el.f).is_zero(), el.name
        assert d_apply(el.D, Poly.var(el.D.ring, 3, 0)).is_zero(), el.name
        assert np_check(newton_polygon(el.f, el.pair)), el.name
