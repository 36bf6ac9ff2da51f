"""Normal forms of homogeneous rank-2 derivations ``D = c * Delta_(X, P)`` over Q.

The pipeline follows the constructive proofs:

* :func:`normalize_sa` finds linear coordinates with ``P = gamma*(Y^(d+2) + X*q)``,
  ``DX = 0`` and ``0 < deg_D(Y) < deg_D(Z)``;
* :func:`shape_sb` reads off the Z-expansion of such a ``P``;
* :func:`triangular_test` decides triangularizability (top Z-degree 1);
* :func:`ntr_normal_form` reduces the non-triangular degree ``pq - 2`` case to
  ``T^p + c_1 X^q T^(p-1) + ... + c_(p-1) X^(pq-q) T + c_p X^(pq-1) Y`` with
  ``T = h(X, Y) + X^(q-1) Z``, by successive gradings and p-th roots.

Everything is exact; every returned object can rebuild its input.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from .coords import CoordinateChange, form_poly, linear_coeffs
from .derivation import (
    DEFAULT_BOUND,
    Derivation,
    LinearForm,
    d_apply,
    deg_d,
    homogeneity_degree,
    jacobian_derivation,
    kernel_member,
)
from .errors import (
    NoLinearKernel,
    NonTermination,
    NoPreimage,
    NotAPthPower,
    NotDivisible,
    NotHomogeneous,
    NotInKernel,
    RewriteNonExact,
    ShapeViolation,
    UnsupportedRing,
)
from .linalg import nullspace
from .poly import Poly, is_homogeneous, top_part, weighted_top_degree
from .polyalg import exact_divide, nth_root
from .ring import RingId, rat

Q = RingId.Q
STANDARD = (1, 1, 1)


def _gens():
    return Poly.gens(Q, 3)


def _as_row(X) -> list:
    if isinstance(X, Poly):
        return linear_coeffs(X)
    if isinstance(X, LinearForm):
        return [Fraction(c.num) for c in X.coeffs]
    return [Fraction(c) for c in X]


def derivation_ratio(D: Derivation, J: Derivation):
    """The rational ``c`` with ``D == c*J``, or None."""
    for a, b in zip(D.images, J.images):
        if not b.is_zero():
            m = b.monomials()[0]
            c = rat(Fraction(a.coeff(m)) / Fraction(b.coeff(m)))
            return c if c != 0 and D == J.scale(c) else None
    return None


def _z_coeffs(f: Poly, var: int = 2) -> Dict[int, Poly]:
    """``{k: c_k}`` with ``f = sum c_k * x_var^k`` and each ``c_k`` free of ``x_var``."""
    out: Dict[int, dict] = {}
    for exps, c in f.terms.items():
        k = exps[var]
        e = list(exps)
        e[var] = 0
        out.setdefault(k, {})[tuple(e)] = c
    return {k: Poly(f.ring, f.nvars, t) for k, t in out.items()}


# ---------------------------------------------------------------------------
# reduction modulo a kernel variable and Rentschler data


def reduce_mod_var(D: Derivation, v: int) -> Derivation:
    """The derivation induced on ``R[x_i : i != v]`` by setting ``x_v = 0``."""
    if not D.images[v].is_zero():
        raise NotInKernel(f"D(x_{v}) is not zero")
    return Derivation([img.drop_var(v) for i, img in enumerate(D.images) if i != v])


@dataclass(frozen=True)
class RentschlerData:
    """``V1`` spans the linear kernel of a 2-variable ``Dbar`` and ``Dbar(V2l) = V1^(d+1)``."""

    v1: Tuple[Fraction, Fraction]
    v2l: Tuple[Fraction, Fraction]
    alpha: Fraction


def rentschler_data(Dbar: Derivation, d: int) -> RentschlerData:
    if Dbar.ring is not Q:
        raise UnsupportedRing("normal forms are implemented over Q")
    if Dbar.nvars != 2 or Dbar.is_zero():
        raise NoLinearKernel("need a nonzero derivation in two variables")
    maps = [img.terms for img in Dbar.images]
    monos = sorted({m for t in maps for m in t})
    basis = nullspace([[t.get(m, 0) for t in maps] for m in monos], Q, 2)
    if len(basis) != 1:
        raise NoLinearKernel(f"linear kernel has dimension {len(basis)}, expected 1")
    v1 = tuple(Fraction(c.num) for c in basis[0])
    V1 = form_poly(v1)
    target = V1 ** (d + 1)
    for L in ((0, 1), (1, 0)):
        img = d_apply(Dbar, form_poly(L))
        if img.is_zero():
            continue
        try:
            lam = exact_divide(img, target)
        except NotDivisible:
            raise NoPreimage(f"D of a coordinate is not a multiple of V1^{d + 1}") from None
        if not lam.is_constant():
            raise NoPreimage(f"D of a coordinate is not a constant multiple of V1^{d + 1}")
        alpha = Fraction(lam.coeff((0, 0)))
        return RentschlerData(v1, tuple(Fraction(x) / alpha for x in L), alpha)
    raise NoLinearKernel("derivation kills both coordinates")


# ---------------------------------------------------------------------------
# sa normalisation


@dataclass(frozen=True)
class SaForm:
    """``P = gamma*(Y^(d+2) + X*q + stripped*X^(d+2))`` in ``coords``.

    ``P`` (the field) is ``Y^(d+2) + X*q``; ``D`` in the new coordinates
    equals ``scale * Delta_(X, P)``.
    """

    coords: CoordinateChange
    P: Poly
    gamma: Fraction
    d: int
    stripped: Fraction
    q: Poly
    scale: Fraction
    deg_y: int
    deg_z: int
    D_new: Derivation
    rentschler: RentschlerData
    rank_note: str = "rank 2 assumed: X is a kernel variable, exact rank not decided"

    def original_P(self) -> Poly:
        X = _gens()[0]
        return self.coords.to_old((self.P + X ** (self.d + 2) * self.stripped) * self.gamma)


def normalize_sa(D: Derivation, X, P: Poly, bound: int = DEFAULT_BOUND) -> SaForm:
    if D.ring is not Q or P.ring is not Q:
        raise UnsupportedRing("normal forms are implemented over Q")
    xrow = _as_row(X)
    Xp = form_poly(xrow)
    if not kernel_member(D, Xp):
        raise NotInKernel("the given X is not in the kernel of D")
    d = homogeneity_degree(D)
    if d is None:
        raise NotHomogeneous("D is not homogeneous for the standard grading")
    if is_homogeneous(P, STANDARD) != d + 2:
        raise ShapeViolation(f"P must be homogeneous of degree {d + 2}", witness=P)
    if derivation_ratio(D, jacobian_derivation(Xp, P)) is None:
        raise ShapeViolation("D is not a constant multiple of Delta_(X, P)")
    piv = next(i for i, c in enumerate(xrow) if c != 0)
    others = [j for j in range(3) if j != piv]
    unit = lambda j: [int(i == j) for i in range(3)]
    C1 = CoordinateChange([xrow, unit(others[0]), unit(others[1])])
    rd = rentschler_data(reduce_mod_var(C1.derivation(D), 0), d)
    # Z is the preimage direction itself; the Rentschler scaling alpha is only
    # recorded, so inputs that are already normal keep their coordinates
    C = C1.then(CoordinateChange([[1, 0, 0], [0, *rd.v1], [0, *(c * rd.alpha for c in rd.v2l)]]))
    x, y, z = _gens()
    Pn = C.to_new(P)
    gamma = Fraction(Pn.coeff((0, d + 2, 0)))
    if gamma == 0:
        raise ShapeViolation("Y^(d+2) does not occur in P after the coordinate change", witness=Pn)
    Pn = Pn.scale(1 / gamma)
    stripped = Fraction(Pn.coeff((d + 2, 0, 0)))
    Pn = Pn - x ** (d + 2) * stripped
    try:
        q = exact_divide(Pn - y ** (d + 2), x)
    except NotDivisible:
        raise ShapeViolation("P is not Y^(d+2) modulo X", witness=Pn) from None
    Dn = C.derivation(D)
    scale = derivation_ratio(Dn, jacobian_derivation(x, Pn))
    if scale is None:
        raise ShapeViolation("D is not a multiple of Delta_(X, P) in the new coordinates")
    dy, dz = deg_d(Dn, y, bound), deg_d(Dn, z, bound)
    if not 0 < dy < dz:
        raise ShapeViolation(f"deg_D(Y) = {dy}, deg_D(Z) = {dz} violate 0 < deg_D(Y) < deg_D(Z)")
    return SaForm(C, Pn, gamma, d, stripped, q, Fraction(scale), dy, dz, Dn, rd)


# ---------------------------------------------------------------------------
# sb shape


@dataclass(frozen=True)
class SbShape:
    """``P = Y^(d+2) + X f_(d+1) + X f_d Z + ... + X f_(i+2) Z^(e-1) + beta X^(i+2) Z^e``, ``e = d - i``."""

    d: int
    i: int
    e: int
    beta: Fraction
    f: Dict[int, Poly]

    def reassemble(self) -> Poly:
        x, y, z = _gens()
        P = y ** (self.d + 2) + x ** (self.i + 2) * z ** self.e * self.beta
        for j, fj in self.f.items():
            P = P + x * fj * z ** (self.d + 1 - j)
        return P


def shape_sb(P: Poly, d: int) -> SbShape:
    x, y, z = _gens()
    cz = _z_coeffs(P)
    e = max(cz)
    if e < 1:
        raise ShapeViolation("P does not involve Z", witness=P)
    top = cz[e]
    mono = (d + 2 - e, 0, 0)
    if d + 2 - e < 0 or top.monomials() != [mono]:
        raise ShapeViolation(f"coefficient of Z^{e} is not beta*X^{d + 2 - e}", witness=top)
    if e > d + 1 or (d + 2) % e:
        raise ShapeViolation(f"Z-degree {e} does not divide d+2 = {d + 2}", witness=top * z ** e)
    beta = Fraction(top.coeff(mono))
    f: Dict[int, Poly] = {}
    for k in range(e):
        c = cz.get(k, Poly.zero(Q, 3))
        if k == 0:
            c = c - y ** (d + 2)
        try:
            fj = exact_divide(c, x)
        except NotDivisible:
            raise ShapeViolation(f"coefficient of Z^{k} is not divisible by X", witness=c) from None
        j = d + 1 - k
        if not fj.is_zero() and is_homogeneous(fj, STANDARD) != j:
            raise ShapeViolation(f"f_{j} is not homogeneous of degree {j}", witness=fj)
        f[j] = fj
    return SbShape(d, d - e, e, beta, f)


# ---------------------------------------------------------------------------
# triangularizability


@dataclass(frozen=True)
class TriangularReport:
    triangular: bool
    d: int
    sa: SaForm
    sb: SbShape
    images: Tuple[Poly, Poly, Poly]
    deg_y: int
    deg_z: int
    containments: bool

    @property
    def coords(self) -> CoordinateChange:
        return self.sa.coords


def triangular_test(D: Derivation, X, P: Poly, d: Optional[int] = None, bound: int = DEFAULT_BOUND) -> TriangularReport:
    sa = normalize_sa(D, X, P, bound)
    if d is not None and d != sa.d:
        raise ShapeViolation(f"D has degree {sa.d}, not {d}")
    sb = shape_sb(sa.P, sa.d)
    imgs = sa.D_new.images
    contain = imgs[0].is_zero() and imgs[1].variables() <= {0} and imgs[2].variables() <= {0, 1}
    return TriangularReport(sb.e == 1, sa.d, sa, sb, tuple(imgs), sa.deg_y, sa.deg_z, sb.e == 1 and contain)


# ---------------------------------------------------------------------------
# the non-triangular pq - 2 normal form


@dataclass(frozen=True)
class NtrReport:
    """``P_orig = gamma * (T^p + sum c_k X^(kq) T^(p-k) + c_p X^(pq-1) Y + stripped X^(pq))``.

    Here ``T = h + X^(q-1) Z`` and the variables are the coordinates ``coords``.
    """

    p: int
    q: int
    swapped: bool
    h: Poly
    c: Tuple[Fraction, ...]
    coords: CoordinateChange
    gamma: Fraction
    stripped: Fraction
    rounds: int
    deg_y: int
    deg_z: int

    @property
    def z_tilde(self) -> Poly:
        x, _, z = _gens()
        return self.h + x ** (self.q - 1) * z

    def normal_poly(self) -> Poly:
        x, y, _ = _gens()
        T = self.z_tilde
        p, q = self.p, self.q
        P = T ** p + x ** (p * q - 1) * y * self.c[p - 1]
        for k in range(1, p):
            P = P + x ** (k * q) * T ** (p - k) * self.c[k - 1]
        return P

    def reconstruct(self) -> Poly:
        """The input P, rebuilt in the original variables."""
        x = _gens()[0]
        return self.coords.to_old((self.normal_poly() + x ** (self.p * self.q) * self.stripped) * self.gamma)

    def derivation(self) -> Derivation:
        """``Delta_(X, P)`` for the normal form, in the report coordinates."""
        return jacobian_derivation(_gens()[0], self.normal_poly())


def _rewrite_in_t(P: Poly, h: Poly, q: int) -> Poly:
    """Express ``P(X, Y, Z)`` as ``Q(X, Y, T)`` with ``T = h + X^(q-1) Z``."""
    x, _, z = _gens()
    tz = h + x ** (q - 1) * z
    R, out = P, Poly.zero(Q, 3)
    for k in range(P.degree(2), -1, -1):
        rk = _z_coeffs(R).get(k)
        if rk is None:
            continue
        try:
            ak = exact_divide(rk, x ** (k * (q - 1)))
        except NotDivisible:
            raise RewriteNonExact(f"coefficient of Z^{k} not divisible by X^{k * (q - 1)}", level=k) from None
        R = R - ak * tz ** k
        out = out + ak * z ** k
    if not R.is_zero():
        raise RewriteNonExact("remainder after rewriting in T", level=0)
    return out


def _monic_root(top: Poly, p: int, lead: Tuple[int, int, int]) -> Poly:
    root = nth_root(top, p)
    if root is None:
        raise NotAPthPower(f"top part is not a {p}-th power")
    c = root.coeff(lead)
    if c == -1 and p % 2 == 0:
        root = -root
    elif c != 1:
        raise NotAPthPower("p-th root of the top part is not monic")
    return root


def _ntr_once(D, X, P, p, q, bound):
    x, y, z = _gens()
    sa = normalize_sa(D, X, P, bound)
    if sa.d != p * q - 2:
        raise ShapeViolation(f"D has degree {sa.d}, expected pq - 2 = {p * q - 2}")
    sb = shape_sb(sa.P, sa.d)
    if sb.e == 1:
        raise ShapeViolation("P is linear in Z: D is triangularizable")
    if sb.e != p:
        raise ShapeViolation(f"Z-degree of P is {sb.e}, not p = {p}")
    w = (0, 1, q)
    if weighted_top_degree(sa.P, w) != p * q:
        raise ShapeViolation(f"top (0,1,{q})-degree of P exceeds pq")
    root = _monic_root(top_part(sa.P, w), p, (0, q, 0))
    alpha = Fraction(root.coeff((q - 1, 0, 1)))
    if alpha == 0 or root != y ** q + x ** (q - 1) * z * alpha:
        raise NotAPthPower("p-th root of the top part is not Y^q + alpha X^(q-1) Z")
    coords = sa.coords.then(CoordinateChange([[1, 0, 0], [0, 1, 0], [0, 0, alpha]]))
    Pc = sa.P.subs({2: z.scale(1 / alpha)})
    h = y ** q
    Qt = _rewrite_in_t(Pc, h, q)
    rounds = 1
    while True:
        s = Qt.set_var(2, 0).degree(1)
        if s < p:
            break
        if rounds >= q:
            raise NonTermination(f"no normal form after {q} rounds")
        if s % p:
            raise ShapeViolation(f"Y-degree {s} of the trailing coefficient is not a multiple of p")
        r = s // p
        root = _monic_root(top_part(Qt, (0, 1, r)), p, (0, 0, 1))
        lam = Fraction(root.coeff((q - r, r, 0)))
        if root != z + x ** (q - r) * y ** r * lam:
            raise NotAPthPower(f"round {rounds + 1}: root is not T + lambda X^(q-r) Y^r")
        h = h + x ** (q - r) * y ** r * lam
        Qt = Qt.subs({2: z - x ** (q - r) * y ** r * lam})
        rounds += 1
    tc = _z_coeffs(Qt)
    a0 = tc.get(0, Poly.zero(Q, 3))
    strip2 = Fraction(a0.coeff((p * q, 0, 0)))
    a0 = a0 - x ** (p * q) * strip2
    cp = Fraction(a0.coeff((p * q - 1, 1, 0)))
    if cp == 0 or a0 != x ** (p * q - 1) * y * cp:
        raise ShapeViolation("T-free part is not c_p X^(pq-1) Y with c_p != 0", witness=a0)
    if tc.get(p) != Poly.one(Q, 3):
        raise ShapeViolation("T^p does not have coefficient 1", witness=tc.get(p))
    cs = []
    for k in range(1, p):
        ck = tc.get(p - k, Poly.zero(Q, 3))
        val = Fraction(ck.coeff((k * q, 0, 0)))
        if ck != x ** (k * q) * val:
            raise ShapeViolation(f"coefficient of T^{p - k} is not c_{k} X^{k * q}", witness=ck)
        cs.append(val)
    cs.append(cp)
    probe = NtrReport(p, q, False, h, tuple(cs), coords, sa.gamma, sa.stripped + strip2, rounds, 0, 0)
    if probe.normal_poly() + x ** (p * q) * strip2 != Pc:
        raise ShapeViolation("normal form does not reproduce P")
    Dr = probe.derivation()
    return probe, deg_d(Dr, y, bound), deg_d(Dr, z, bound)


def ntr_normal_form(D: Derivation, X, P: Poly, p: int, q: int, bound: int = DEFAULT_BOUND) -> NtrReport:
    """Try ``(p, q)`` and then ``(q, p)``; the report says which one worked."""
    orders = [(p, q, False)] + ([(q, p, True)] if p != q else [])
    first_error = None
    for pp, qq, swapped in orders:
        try:
            rep, dy, dz = _ntr_once(D, X, P, pp, qq, bound)
        except (ShapeViolation, NotAPthPower, RewriteNonExact, NonTermination) as exc:
            first_error = first_error or exc
            continue
        return NtrReport(pp, qq, swapped, rep.h, rep.c, rep.coords, rep.gamma, rep.stripped, rep.rounds, dy, dz)
    raise first_error


# ---------------------------------------------------------------------------
# recovering X and P from D alone


def kernel_variable(D: Derivation, bound: int = DEFAULT_BOUND) -> Poly:
    """The linear kernel form of a rank-2 derivation over Q (unique up to scale)."""
    from .derivation import linear_filtration

    if D.ring is not Q:
        raise UnsupportedRing("normal forms are implemented over Q")
    s0 = linear_filtration(D, bound).strata[0]
    if s0.dim != 1:
        raise NoLinearKernel(f"expected one linear kernel form, found {s0.dim}")
    return s0.basis[0].to_poly()


def kernel_partner(D: Derivation, X: Poly) -> Poly:
    """A homogeneous ``P`` of degree d+2 with ``D P = 0``, independent of ``X^(d+2)``."""
    d = homogeneity_degree(D)
    if d is None or d < 0:
        raise NotHomogeneous("D is not homogeneous of nonnegative degree")
    n = d + 2
    monos = [Poly.monomial(Q, 3, (i, j, n - i - j)) for i in range(n + 1) for j in range(n + 1 - i)]
    images = [d_apply(D, m).terms for m in monos]
    rows_keys = sorted({k for t in images for k in t})
    matrix = [[t.get(k, 0) for t in images] for k in rows_keys]
    basis = nullspace(matrix, Q, len(monos))
    xp = X ** n
    for vec in basis:
        cand = Poly.zero(Q, 3)
        for c, m in zip(vec, monos):
            if not c.is_zero():
                cand = cand + m.scale(c.num)
        lead = xp.monomials()[0]
        cand = cand - xp.scale(Fraction(cand.coeff(lead)) / Fraction(xp.coeff(lead)))
        if not cand.is_zero():
            if len(basis) != 2:
                raise ShapeViolation(f"kernel has dimension {len(basis)} in degree {n}, expected 2")
            return cand
    raise ShapeViolation(f"no kernel element of degree {n} besides powers of X")
