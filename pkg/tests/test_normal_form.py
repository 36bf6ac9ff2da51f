import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from lndkit.constructions import build_example2, random_ntr_instance, random_tr_instance
from lndkit.derivation import Derivation, d_apply, deg_d, jacobian_derivation
from lndkit.errors import NoLinearKernel, NotInKernel, ShapeViolation, UnsupportedRing
from lndkit.normal_form import (
    kernel_partner,
    kernel_variable,
    normalize_sa,
    ntr_normal_form,
    reduce_mod_var,
    rentschler_data,
    shape_sb,
    triangular_test,
)
from lndkit.poly import Poly

from helpers import Q, SX, SY, SZ, same

x, y, z = Poly.gens(Q, 3)
X_ROW = (1, 0, 0)


def delta(P):
    return jacobian_derivation(x, P)


def test_reduce_mod_var():
    zero = Poly.zero(Q, 3)
    D = Derivation([zero, -x ** 2, 3 * y ** 2 + 2 * x * y])
    Dbar = reduce_mod_var(D, 0)
    u, v = Poly.gens(Q, 2)
    assert list(Dbar.images) == [Poly.zero(Q, 2), 3 * u ** 2]
    assert reduce_mod_var(Derivation([zero] * 3), 0).is_zero()
    with pytest.raises(NotInKernel):
        reduce_mod_var(Derivation([y, zero, zero]), 0)


def test_reduce_ntr_instance_mod_x():
    P = (y ** 2 + x * z) ** 2 + x ** 3 * y
    u, v = Poly.gens(Q, 2)
    Dbar = reduce_mod_var(delta(P), 0)
    # sympy: the Jacobian of (x, P) at x = 0
    sP = (SY ** 2 + SX * SZ) ** 2 + SX ** 3 * SY
    dy = (-sympy.diff(sP, SZ)).subs(SX, 0)
    dz = sympy.diff(sP, SY).subs(SX, 0)
    assert dy == 0 and sympy.expand(dz) == 4 * SY ** 3
    assert Dbar.images[0].is_zero() and Dbar.images[1] == 4 * u ** 3


@pytest.mark.parametrize("d,coef", [(1, 3), (2, 4)])
def test_rentschler_data(d, coef):
    u, v = Poly.gens(Q, 2)
    rd = rentschler_data(Derivation([Poly.zero(Q, 2), coef * u ** (d + 1)]), d)
    assert rd.v1 == (1, 0) and rd.v2l == (0, Fraction(1, coef)) and rd.alpha == coef
    rd = rentschler_data(Derivation([Poly.zero(Q, 2), u ** (d + 1)]), d)
    assert rd.v1 == (1, 0) and rd.v2l == (0, 1) and rd.alpha == 1
    with pytest.raises(NoLinearKernel):
        rentschler_data(Derivation([Poly.zero(Q, 2)] * 2), d)


def test_normalize_sa_already_normal():
    P = y ** 3 + x * y ** 2 + x ** 2 * z
    sa = normalize_sa(delta(P), X_ROW, P)
    assert sa.gamma == 1 and sa.P == P and sa.original_P() == P
    assert (sa.deg_y, sa.deg_z) == (1, 3)


def test_normalize_sa_swapped_roles():
    P = z ** 3 + x * z ** 2 + x ** 2 * y
    sa = normalize_sa(delta(P), X_ROW, P)
    assert sa.deg_y < sa.deg_z
    assert sa.original_P() == P
    assert sa.P == y ** 3 + x * y ** 2 + x ** 2 * z


def test_normalize_sa_collects_q():
    P = (y ** 2 + x * z) ** 2 + x ** 3 * y
    sa = normalize_sa(delta(P), X_ROW, P)
    assert sa.q == 2 * y ** 2 * z + x * z ** 2 + x ** 2 * y
    sq = sympy.expand(((SY ** 2 + SX * SZ) ** 2 + SX ** 3 * SY - SY ** 4) / SX)
    assert same(sa.q, sq)
    # re-deriving Delta_(X, P) from the output reproduces D up to the extracted scale
    assert sa.D_new == jacobian_derivation(x, sa.P).scale(sa.scale)


def test_normalize_sa_rejects_other_rings():
    with pytest.raises(UnsupportedRing):
        D = build_example2(0).D
        normalize_sa(D, X_ROW, Poly.var(D.ring, 3, 1))


@pytest.mark.parametrize("P,d,i,beta,f", [
    (y ** 3 + x * y ** 2 + x ** 2 * z, 1, 0, 1, {2: y ** 2}),
    (y ** 4 + 2 * x * y ** 2 * z + x ** 2 * z ** 2 + x ** 3 * y, 2, 0, 1, {3: x ** 2 * y, 2: 2 * y ** 2}),
])
def test_shape_sb(P, d, i, beta, f):
    sb = shape_sb(P, d)
    assert (sb.i, sb.beta) == (i, beta)
    assert {k: v for k, v in sb.f.items() if not v.is_zero()} == f
    assert sb.reassemble() == P


def test_shape_sb_violation():
    with pytest.raises(ShapeViolation):
        shape_sb(y ** 4 + x * z ** 3, 2)


def test_triangular_example():
    P = y ** 3 + x * y ** 2 + x ** 2 * z
    D = delta(P)
    assert D.images[1] == -x ** 2 and D.images[2] == 3 * y ** 2 + 2 * x * y
    rep = triangular_test(D, X_ROW, P)
    assert rep.triangular and rep.containments
    assert (rep.deg_y, rep.deg_z) == (1, 3)
    rep = triangular_test(delta((y ** 2 + x * z) ** 2 + x ** 3 * y), X_ROW, (y ** 2 + x * z) ** 2 + x ** 3 * y)
    assert not rep.triangular and rep.sb.e == 2


@settings(max_examples=25)
@given(st.integers(0, 2 ** 32), st.sampled_from([1, 3, 5]))
def test_tr_instances_are_triangular(seed, d):
    inst = random_tr_instance(random.Random(seed), d)
    rep = triangular_test(inst.D, kernel_variable(inst.D), inst.P)
    assert rep.triangular and (rep.deg_y, rep.deg_z) == (1, d + 2)
    img = rep.images
    assert img[0].is_zero() and img[1].variables() <= {0} and img[2].variables() <= {0, 1}
    assert rep.sb.reassemble() == rep.sa.P


@pytest.mark.parametrize("p,q,h,P", [
    (2, 2, y ** 2, (y ** 2 + x * z) ** 2 + x ** 3 * y),
    (2, 3, y ** 3 + x * y ** 2, (y ** 3 + x * y ** 2 + x ** 2 * z) ** 2 + x ** 5 * y),
])
def test_ntr_examples(p, q, h, P):
    D = delta(P)
    nf = ntr_normal_form(D, X_ROW, P, p, q)
    assert nf.h == h and list(nf.c) == [0, 1]
    assert nf.z_tilde == h + x ** (q - 1) * z
    assert nf.reconstruct() == P
    assert (nf.deg_y, nf.deg_z) == (p, p * q)
    # brute force on the reconstructed derivation
    E = nf.derivation()
    assert deg_d(E, y) == p and deg_d(E, z) == p * q


def test_ntr_rejects_missing_cp():
    P = (y ** 2 + x * z) ** 2 + x ** 4
    with pytest.raises(ShapeViolation):
        ntr_normal_form(delta(P), X_ROW, P, 2, 2)


@settings(max_examples=15)
@given(st.integers(0, 2 ** 32), st.sampled_from([(2, 2), (2, 3), (3, 2), (3, 3)]))
def test_ntr_round_trip_random(seed, pq):
    p, q = pq
    inst = random_ntr_instance(random.Random(seed), p, q)
    X = kernel_variable(inst.D)
    assert not triangular_test(inst.D, X, inst.P).triangular
    nf = ntr_normal_form(inst.D, X, inst.P, p, q)
    assert nf.reconstruct() == inst.P and nf.c[-1] != 0
    assert (nf.deg_y, nf.deg_z) == (p, p * q)


def test_kernel_variable_and_partner():
    inst = random_tr_instance(random.Random(3), 2)
    X = kernel_variable(inst.D)
    assert d_apply(inst.D, X).is_zero()
    P = kernel_partner(inst.D, X)
    assert d_apply(inst.D, P).is_zero() and P.total_degree() == 4
    assert triangular_test(inst.D, X, P).triangular
    with pytest.raises(NoLinearKernel):
        kernel_variable(Derivation([Poly.zero(Q, 3), Poly.zero(Q, 3), x]))
