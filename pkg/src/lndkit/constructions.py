"""Builders and verifiers for the worked examples and the normal-form families.

Builders only use polynomial arithmetic; verifiers go through the derivation
and normal-form layers, so a verified instance has been checked by code that
did not produce it.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .derivation import (
    DEFAULT_BOUND,
    Derivation,
    certify_nilpotent,
    deg_d,
    homogeneity_degree,
    kernel_type,
    linear_filtration,
    rank_upper,
    strict_triple,
)
from .errors import LndError, ShapeViolation
from .linalg import FracElem
from .normal_form import ntr_normal_form, triangular_test
from .poly import Poly, is_homogeneous
from .report import VerificationReport
from .ring import RingId

Q, QT, CIRCLE = RingId.Q, RingId.POLY_T, RingId.CIRCLE

ASSERTED_EX1 = [
    "ker(D) = k[t, F, G, H]: asserted (proof-level, not checked); membership and the relation are checked",
    "ker(D) is not a polynomial ring over k[t]: asserted (proof-level, not checked)",
    "rank(D) = 3: asserted (proof-level, not checked)",
]
ASSERTED_EX2 = [
    "rank(D) = 3: asserted (proof-level, not checked); the linear kernel form is not certified as a variable",
    "ker(D) is not a polynomial ring over the coefficient ring: asserted (proof-level, not checked)",
]
ASSERTED_EX3 = [
    "ker(D) = R[X, F1, F2] and it is not a polynomial ring: asserted (proof-level, not checked)",
]


def _jacobian_images(F: Poly, G: Poly) -> List[Poly]:
    """Images of the coordinates under h -> det(dF, dG, dh), by cofactors."""
    dF = [F.diff(i) for i in range(3)]
    dG = [G.diff(i) for i in range(3)]
    return [
        dF[1] * dG[2] - dF[2] * dG[1],
        dF[2] * dG[0] - dF[0] * dG[2],
        dF[0] * dG[1] - dF[1] * dG[0],
    ]


# ---------------------------------------------------------------------------
# Example 1: degree 4 over Q[t]


@dataclass(frozen=True)
class Example1:
    D: Derivation
    F: Poly
    G: Poly
    P: Poly
    H: Poly
    F1: Poly
    G1: Poly


def build_example1() -> Example1:
    x, y, z = Poly.gens(QT, 3)
    t = Poly.symbol(QT, 3, "t")
    F = x * (t * z + x) - t ** 2 * y ** 2
    G = (t * z + x) * F ** 2 + 2 * t * x ** 2 * y * F + x ** 5
    P = t * y * F + x ** 3
    D = Derivation([
        -2 * t ** 2 * F * P,
        t * (6 * x ** 2 * P - G),
        2 * x * (5 * t ** 2 * y * P + t * F ** 2) + 2 * t * F * P,
    ])
    F1 = x * z - t * y ** 2
    G1 = (x ** 4 * z + 2 * t * x ** 2 * F1 * z + t ** 2 * F1 ** 2 * z + 2 * x ** 3 * F1
          + t * x * F1 ** 2 + 2 * x ** 2 * y * F)
    H = (4 * x ** 5 * G1 + t * G1 ** 2 - 20 * x ** 8 * F1 - 40 * t * x ** 6 * F1 ** 2
         - 40 * t ** 2 * x ** 4 * F1 ** 3 - 20 * t ** 3 * x ** 2 * F1 ** 4 - 4 * t ** 4 * F1 ** 5)
    return Example1(D, F, G, P, H, F1, G1)


def _at_t0(f: Poly) -> Poly:
    """Reduction modulo t of a Q[t]-polynomial, as a Q-polynomial."""
    return Poly(Q, f.nvars, {e: c(0) for e, c in f.terms.items() if c(0) != 0})


def _proportional(f: Poly, g: Poly) -> bool:
    if f.is_zero() or g.is_zero():
        return f.is_zero() and g.is_zero()
    mono = f.monomials()[0]
    c = g.coeff(mono)
    return c != 0 and f.scale(c) == g.scale(f.coeff(mono))


def verify_example1(bound: int = DEFAULT_BOUND) -> VerificationReport:
    ex = build_example1()
    D = ex.D
    rep = VerificationReport("example1")
    x, y, z = Poly.gens(QT, 3)
    t = Poly.symbol(QT, 3, "t")
    cert = certify_nilpotent(D, bound)
    rep.expect("orders", list(cert.orders), [3, 7, 11])
    rep.add("DF", D(ex.F).is_zero(), D(ex.F))
    rep.add("DG", D(ex.G).is_zero(), D(ex.G))
    rep.add("DH", D(ex.H).is_zero(), D(ex.H))
    rel = ex.G ** 2 - 4 * ex.F ** 5 - t * ex.H
    rep.add("relation_G2_4F5_tH", rel.is_zero(), rel)
    for name, res in (("F - x^2 - t*F1", ex.F - x ** 2 - t * ex.F1), ("G - 2*x^5 - t*G1", ex.G - 2 * x ** 5 - t * ex.G1),
                      ("P - t*y*F - x^3", ex.P - t * y * ex.F - x ** 3)):
        rep.add(name, res.is_zero(), res)
    rep.add("F contains -t^2*y^2", ex.F.coeff((0, 2, 0)) == (-t ** 2).coeff((0, 0, 0)), ex.F)
    rep.expect("homogeneity_degree", homogeneity_degree(D), 4)
    # over k(t), u = x, v = t*y, w = t*z + x turns (F, G) into the (2,5) pair
    u, v, w = x, t * y, t * z + x
    Fl = u * w - v ** 2
    Gl = w * Fl ** 2 + 2 * u ** 2 * v * Fl + u ** 5
    rep.add("F - (uw - v^2)", Fl == ex.F, ex.F - Fl)
    rep.add("G - (wF^2 + 2u^2vF + u^5)", Gl == ex.G, ex.G - Gl)
    xq, yq, zq = Poly.gens(Q, 3)
    kt = kernel_type(xq * zq - yq ** 2, zq * (xq * zq - yq ** 2) ** 2 + 2 * xq ** 2 * yq * (xq * zq - yq ** 2) + xq ** 5)
    rep.expect("kernel_type", [kt.p, kt.q], [2, 5])
    G0, F0 = _at_t0(ex.G), _at_t0(ex.F)
    for a, b in ((2, 3), (2, 4)):
        rep.add(f"no relation G^{a} ~ F^{b} mod t", not _proportional(G0 ** a, F0 ** b), [(G0 ** a).to_str(), (F0 ** b).to_str()])
    rep.add("G^2 - 4F^5 mod t", G0 ** 2 == 4 * F0 ** 5, G0 ** 2 - 4 * F0 ** 5)
    rep.notes.extend(ASSERTED_EX1)
    return rep


# ---------------------------------------------------------------------------
# Examples 2 and 3 over the circle ring


@dataclass(frozen=True)
class Example2:
    d: int
    D: Derivation
    X1: Poly
    X2: Poly
    F: Poly


def _circle_gens():
    X, Y, Z = Poly.gens(CIRCLE, 3)
    return X, Y, Z, Poly.symbol(CIRCLE, 3, "w1"), Poly.symbol(CIRCLE, 3, "w2")


def build_example2(d: int) -> Example2:
    if d < 0:
        raise ShapeViolation("d must be nonnegative")
    X, Y, Z, w1, w2 = _circle_gens()
    X1 = w1 * X + (1 - w2) * Y
    X2 = (1 + w2) * X + w1 * Y
    D = Derivation([(1 - w2) * X1 ** (d + 1), -w1 * X1 ** (d + 1), (d + 2) * w1 * Y ** (d + 1)])
    return Example2(d, D, X1, X2, Y ** (d + 2) + X1 ** (d + 1) * Z)


def verify_example2(d: int, bound: int = DEFAULT_BOUND) -> VerificationReport:
    ex = build_example2(d)
    D = ex.D
    X, Y, Z, w1, w2 = _circle_gens()
    rep = VerificationReport(f"example2[d={d}]")
    rep.add("DX1", D(ex.X1).is_zero(), D(ex.X1))
    rep.add("DX2", D(ex.X2).is_zero(), D(ex.X2))
    rep.add("DF", D(ex.F).is_zero(), D(ex.F))
    rep.expect("homogeneity_degree", homogeneity_degree(D), d)
    degs = [deg_d(D, v, bound) for v in (X, Y, Z)]
    rep.expect("deg_d(x, y, z)", degs, [1, 1, d + 2])
    rep.add("deg_d values within {1, d+2}", set(degs) <= {1, d + 2}, sorted(set(degs)))
    filt = linear_filtration(D, bound)
    rep.expect("filtration_jumps", list(filt.jumps), sorted({0, 1, d + 2}))
    s0 = filt.strata[0]
    x1row = [FracElem(CIRCLE, ex.X1.coeff(e)) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    rep.add("m=0 form proportional to X1", s0.dim == 1 and s0.basis[0].is_proportional(x1row),
            [str(c) for c in s0.basis[0].row()] if s0.basis else None)
    triple = strict_triple(D, bound)
    rep.add("strict triple over the fraction field", triple is not None,
            [[str(L), m] for L, m in triple] if triple else None)
    rb = rank_upper(D, bound)
    rep.add("m=0 row not certified as a variable", rb.certified == () and bool(rb.kernel_forms), rb.status)
    rep.expect("rank upper bound", rb.bound, 3)
    rep.notes.extend(ASSERTED_EX2)
    return rep


@dataclass(frozen=True)
class Example3:
    d: int
    D: Derivation
    F1: Poly
    F2: Poly


def build_example3(d: int) -> Example3:
    if d < 0:
        raise ShapeViolation("d must be nonnegative")
    X, Y, Z, w1, w2 = _circle_gens()
    D = Derivation([Poly.zero(CIRCLE, 3), (1 + w2) * X ** (d + 1), -2 * w1 * Y * X ** d])
    F1 = w1 * Y ** 2 + (1 + w2) * X * Z
    F2 = (1 - w2) * Y ** 2 + w1 * X * Z
    return Example3(d, D, F1, F2)


def verify_example3(d: int, bound: int = DEFAULT_BOUND) -> VerificationReport:
    ex = build_example3(d)
    D = ex.D
    X, Y, Z, w1, w2 = _circle_gens()
    rep = VerificationReport(f"example3[d={d}]")
    rep.add("DX", D(X).is_zero(), D(X))
    rep.add("DF1", D(ex.F1).is_zero(), D(ex.F1))
    rep.add("DF2", D(ex.F2).is_zero(), D(ex.F2))
    ident = (1 - w2) * ex.F1 - w1 * ex.F2
    rep.add("(1-w2)*F1 - w1*F2", ident.is_zero(), ident)
    rep.expect("homogeneity_degree", homogeneity_degree(D), d)
    rb = rank_upper(D, bound)
    one, zero = 1, 0
    rep.expect("rank upper bound", rb.bound, 2)
    rep.add("witness variable x", [tuple(str(c) for c in r) for r in rb.certified] == [(str(one), str(zero), str(zero))],
            [[str(c) for c in r] for r in rb.certified])
    rep.notes.extend(ASSERTED_EX3)
    return rep


# ---------------------------------------------------------------------------
# tr and ntr families over Q


@dataclass(frozen=True)
class Instance:
    """``D = Delta_(X, P)`` in scrambled coordinates, with the expected answer."""

    kind: str
    params: dict
    D: Derivation
    X: Poly
    P: Poly
    P_normal: Poly
    matrix: Tuple[Tuple[int, ...], ...]
    expected: str
    expected_degs: Tuple[int, int]


IDENTITY = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def _scramble(f: Poly, matrix) -> Poly:
    """``f(M u)``: new coordinate i becomes the linear form ``matrix[i]``."""
    gens = Poly.gens(Q, 3)
    vals = {}
    for i, row in enumerate(matrix):
        acc = Poly.zero(Q, 3)
        for j, c in enumerate(row):
            if c:
                acc = acc + gens[j].scale(c)
        vals[i] = acc
    return f.subs(vals)


def _instance(kind, params, P, matrix, expected, degs) -> Instance:
    matrix = tuple(tuple(r) for r in (matrix or IDENTITY))
    Xs = _scramble(Poly.var(Q, 3, 0), matrix)
    Ps = _scramble(P, matrix)
    return Instance(kind, params, Derivation(_jacobian_images(Xs, Ps)), Xs, Ps, P, matrix, expected, degs)


def build_tr_instance(d: int, f: Poly, beta, matrix=None) -> Instance:
    """``P = Y^(d+2) + X f + beta X^(d+1) Z`` with ``f`` homogeneous of degree d+1 in X, Y."""
    if d < 0:
        raise ShapeViolation("d must be nonnegative")
    if Fraction(beta) == 0:
        raise ShapeViolation("beta must be nonzero", witness=beta)
    if f.ring is not Q or f.nvars != 3 or 2 in f.variables():
        raise ShapeViolation("f must be a polynomial in X and Y over Q", witness=f)
    if not f.is_zero() and is_homogeneous(f, (1, 1, 1)) != d + 1:
        raise ShapeViolation(f"f must be homogeneous of degree {d + 1}", witness=f)
    x, y, z = Poly.gens(Q, 3)
    P = y ** (d + 2) + x * f + x ** (d + 1) * z * beta
    return _instance("tr", {"d": d, "f": f, "beta": Fraction(beta)}, P, matrix, "Triangular", (1, d + 2))


def ntr_poly(p: int, q: int, h: Poly, c: Sequence) -> Poly:
    x, y, z = Poly.gens(Q, 3)
    T = h + x ** (q - 1) * z
    P = T ** p + x ** (p * q - 1) * y * c[p - 1]
    for k in range(1, p):
        P = P + x ** (k * q) * T ** (p - k) * c[k - 1]
    return P


def build_ntr_instance(p: int, q: int, h: Poly, c: Sequence, matrix=None) -> Instance:
    """The normal form ``T^p + ... + c_p X^(pq-1) Y`` with ``T = h + X^(q-1) Z``."""
    if p < 2 or q < 2:
        raise ShapeViolation("p and q must be at least 2")
    if len(c) != p:
        raise ShapeViolation(f"expected {p} coefficients c_1..c_p", witness=list(c))
    if Fraction(c[-1]) == 0:
        raise ShapeViolation("c_p must be nonzero", witness=list(c))
    if h.ring is not Q or h.nvars != 3 or 2 in h.variables() or is_homogeneous(h, (1, 1, 1)) != q:
        raise ShapeViolation(f"h must be homogeneous of degree {q} in X and Y", witness=h)
    if h.coeff((0, q, 0)) != 1:
        raise ShapeViolation("h must be monic in Y", witness=h)
    P = ntr_poly(p, q, h, [Fraction(v) for v in c])
    params = {"p": p, "q": q, "h": h, "c": [Fraction(v) for v in c]}
    return _instance("ntr", params, P, matrix, "NotTriangular", (p, p * q))


def verify_instance(inst: Instance, bound: int = DEFAULT_BOUND) -> VerificationReport:
    rep = VerificationReport(f"{inst.kind}{sorted((k, str(v)) for k, v in inst.params.items() if k in ('d', 'p', 'q'))}")
    rep.add("DX", inst.D(inst.X).is_zero(), inst.D(inst.X))
    rep.add("DP", inst.D(inst.P).is_zero(), inst.D(inst.P))
    try:
        tr = triangular_test(inst.D, inst.X, inst.P, bound=bound)
    except LndError as exc:
        rep.add("triangular_test", False, f"{type(exc).__name__}: {exc}")
        return rep
    got = "Triangular" if tr.triangular else "NotTriangular"
    rep.expect("classification", got, inst.expected)
    if inst.kind == "tr":
        rep.expect("deg_d(Y), deg_d(Z)", [tr.deg_y, tr.deg_z], list(inst.expected_degs))
        rep.add("images triangular", tr.containments)
        return rep
    p, q = inst.params["p"], inst.params["q"]
    try:
        nf = ntr_normal_form(inst.D, inst.X, inst.P, p, q, bound)
    except LndError as exc:
        rep.add("ntr_normal_form", False, f"{type(exc).__name__}: {exc}")
        return rep
    rep.add("round trip", nf.reconstruct() == inst.P)
    rep.expect("deg_d(Y), deg_d(Z)", [nf.deg_y, nf.deg_z], list(inst.expected_degs))
    rep.add("c_p nonzero", nf.c[-1] != 0, [str(v) for v in nf.c])
    return rep


def default_tr_instance(d: int = 1) -> Instance:
    x, y, _ = Poly.gens(Q, 3)
    return build_tr_instance(d, y ** (d + 1), 1)


def default_ntr_instance(p: int = 2, q: int = 2) -> Instance:
    y = Poly.var(Q, 3, 1)
    return build_ntr_instance(p, q, y ** q, [0] * (p - 1) + [1])


# ---------------------------------------------------------------------------
# randomized instances


def _small(rng: random.Random, lo=-3, hi=3, nonzero=False) -> int:
    while True:
        v = rng.randint(lo, hi)
        if v or not nonzero:
            return v


def random_unimodular(rng: random.Random, steps: int = 4) -> Tuple[Tuple[int, ...], ...]:
    """Product of random elementary integer matrices and a permutation."""
    m = [list(r) for r in IDENTITY]
    for _ in range(steps):
        i, j = rng.sample(range(3), 2)
        k = _small(rng, -2, 2, nonzero=True)
        m[i] = [a + k * b for a, b in zip(m[i], m[j])]
    perm = list(range(3))
    rng.shuffle(perm)
    return tuple(tuple(m[i]) for i in perm)


def random_tr_instance(rng: random.Random, d: int, scramble: bool = True) -> Instance:
    x, y, _ = Poly.gens(Q, 3)
    f = Poly.zero(Q, 3)
    for i in range(d + 2):
        f = f + x ** i * y ** (d + 1 - i) * _small(rng)
    beta = Fraction(_small(rng, nonzero=True), rng.randint(1, 3))
    return build_tr_instance(d, f, beta, random_unimodular(rng) if scramble else None)


def random_ntr_instance(rng: random.Random, p: int, q: int, scramble: bool = True) -> Instance:
    x, y, _ = Poly.gens(Q, 3)
    h = y ** q
    for j in range(1, q):
        h = h + x ** j * y ** (q - j) * _small(rng, -2, 2)
    c = [_small(rng, -2, 2) for _ in range(p - 1)] + [Fraction(_small(rng, nonzero=True), rng.randint(1, 2))]
    return build_ntr_instance(p, q, h, c, random_unimodular(rng) if scramble else None)


# ---------------------------------------------------------------------------
# kernel elements for the Newton polygon property


@dataclass(frozen=True)
class KernelElement:
    """``f`` with ``D f = 0``, where variable 0 is killed by D and ``pair`` is (Y, Z)."""

    name: str
    D: Derivation
    f: Poly
    pair: Tuple[int, int] = (1, 2)


def newton_corpus() -> List[KernelElement]:
    out: List[KernelElement] = []
    for d in range(3):
        ex = build_example3(d)
        out.append(KernelElement(f"example3[d={d}].F1", ex.D, ex.F1))
        out.append(KernelElement(f"example3[d={d}].F2", ex.D, ex.F2))
        out.append(KernelElement(f"example3[d={d}].F1*F2", ex.D, ex.F1 * ex.F2))
    x, y, z = Poly.gens(Q, 3)
    for d in range(4):
        inst = default_tr_instance(d)
        P = inst.P_normal
        D = Derivation(_jacobian_images(x, P))
        out.append(KernelElement(f"tr[d={d}].P", D, P))
        out.append(KernelElement(f"tr[d={d}].P^2+x*P", D, P ** 2 + x * P))
        out.append(KernelElement(f"tr[d={d}].P+x^{d + 2}", D, P + x ** (d + 2)))
    for p, q in ((2, 2), (2, 3), (3, 2), (2, 5), (3, 3)):
        inst = default_ntr_instance(p, q)
        P = inst.P_normal
        D = Derivation(_jacobian_images(x, P))
        out.append(KernelElement(f"ntr[p={p},q={q}].P", D, P))
        out.append(KernelElement(f"ntr[p={p},q={q}].x^2*P", D, x ** 2 * P))
    P = y ** 2 + x * z
    out.append(KernelElement("y^2+x*z", Derivation(_jacobian_images(x, P)), P))
    return out


def verify_paper(example: str, d: Optional[int] = None, p: Optional[int] = None, q: Optional[int] = None,
                 bound: int = DEFAULT_BOUND) -> List[VerificationReport]:
    """Reports for one example; without ``d`` the small default sweep is used."""
    if example == "1":
        return [verify_example1(bound)]
    if example == "2":
        return [verify_example2(v, bound) for v in ([d] if d is not None else range(4))]
    if example == "3":
        return [verify_example3(v, bound) for v in ([d] if d is not None else range(3))]
    if example == "tr":
        return [verify_instance(default_tr_instance(1 if d is None else d), bound)]
    if example == "ntr":
        return [verify_instance(default_ntr_instance(p or 2, q or 2), bound)]
    raise ValueError(f"unknown example {example!r}")
