from fractions import Fraction

import sympy
from hypothesis import given, strategies as st

from lndkit.linalg import FracElem, bareiss, in_span, nullspace, rref
from lndkit.ring import CircleElem, RingId, UniPoly

from helpers import ring_elems

Q, QT, CIRCLE = RingId.Q, RingId.POLY_T, RingId.CIRCLE

matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r)))


@given(matrices)
def test_nullspace_over_q_matches_sympy(rows):
    ncols = len(rows[0])
    basis = nullspace([[Fraction(v) for v in r] for r in rows], Q, ncols)
    expected = sympy.Matrix(rows).nullspace()
    assert len(basis) == len(expected)
    got = sympy.Matrix([[sympy.Rational(str(e.num)) for e in v] for v in basis]) if basis else None
    if basis:
        # same row space as sympy's basis
        want = sympy.Matrix.hstack(*expected).T
        assert got.rank() == want.rank() == sympy.Matrix.vstack(got, want).rank()
    for v in basis:
        for r in rows:
            assert sum(Fraction(a) * e.num for a, e in zip(r, v)) == 0


@given(st.sampled_from([QT, CIRCLE]).flatmap(
    lambda ring: st.tuples(st.just(ring), st.lists(st.lists(ring_elems(ring, max_deg=1), min_size=3, max_size=3),
                                                   min_size=1, max_size=3))))
def test_nullspace_vectors_annihilate(data):
    ring, rows = data
    basis = nullspace(rows, ring, 3)
    ech, pivots = bareiss(rows, ring)
    assert len(basis) == 3 - len(pivots)
    for v in basis:
        for r in rows:
            acc = FracElem(ring, 0)
            for a, e in zip(r, v):
                acc = acc + FracElem(ring, a) * e
            assert acc.is_zero()


def test_fracelem_canonical():
    t = UniPoly((0, 1))
    a = FracElem(QT, t * t - 1, t - 1)
    assert a == FracElem(QT, t + 1)
    assert a.in_ring() == t + 1
    assert FracElem(QT, 1, t).in_ring() is None
    assert (FracElem(QT, 1, t) * FracElem(QT, t)).in_ring() == UniPoly((1,))
    w1 = CircleElem(UniPoly(), UniPoly((1,)))
    one_plus_w2 = CircleElem(UniPoly((1, 1)))
    r = FracElem(CIRCLE, w1, one_plus_w2)
    # w1 / (1 + w2) = (1 - w2) / w1
    assert r == FracElem(CIRCLE, CircleElem(UniPoly((1, -1))), w1)
    assert (r * r.inverse()) == FracElem(CIRCLE, 1)


def test_rref_and_span():
    one, zero = FracElem(Q, 1), FracElem(Q, 0)
    two = FracElem(Q, 2)
    basis = rref([(one, two, zero), (two, FracElem(Q, 4), zero)])
    assert len(basis) == 1
    assert in_span((two, FracElem(Q, 4), zero), basis)
    assert not in_span((zero, zero, one), basis)
