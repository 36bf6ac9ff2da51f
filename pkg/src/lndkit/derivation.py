"""Derivations of R[x1, .., xn] (n <= 3) and the quantities attached to them.

A derivation is stored through the images of the main variables; the
coefficient symbols (t, w1, w2) are constants for it.  Degree functions need
iteration, so everything that iterates takes a ``bound`` and raises
:class:`BoundExceeded` instead of looping forever on a derivation that is not
locally nilpotent.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from . import kernel
from .errors import (
    BoundExceeded,
    DimensionError,
    NotHomogeneous,
    RingMismatch,
    UnsupportedRing,
    ZeroInput,
)
from .linalg import FracElem, clear_denominators, in_span, nullspace
from .poly import NEG_INF, Poly, is_homogeneous, unpack, weighted_parts
from .polyalg import gcd_multivar
from .ring import RingId, UniPoly, ring_from_rational, ring_is_unit, ring_is_zero, ring_zero, uni_gcd_bezout

DEFAULT_BOUND = 64
STANDARD = (1, 1, 1)


class Derivation:
    """R-derivation given by ``images[i] = D(x_i)``."""

    __slots__ = ("ring", "nvars", "images", "_flat")

    def __init__(self, images: Sequence[Poly]):
        images = tuple(images)
        if not images:
            raise DimensionError("a derivation needs at least one variable")
        ring, n = images[0].ring, images[0].nvars
        if len(images) != n:
            raise DimensionError(f"{len(images)} images given for {n} variables")
        for img in images:
            if img.ring is not ring or img.nvars != n:
                raise RingMismatch("derivation images live in different polynomial rings")
        self.ring = ring
        self.nvars = n
        self.images = images
        self._flat = [img._t for img in images]

    @classmethod
    def zero(cls, ring: RingId, nvars: int) -> "Derivation":
        return cls([Poly.zero(ring, nvars)] * nvars)

    def __call__(self, f: Poly) -> Poly:
        return d_apply(self, f)

    def is_zero(self) -> bool:
        return all(img.is_zero() for img in self.images)

    def scale(self, c) -> "Derivation":
        return Derivation([img * c for img in self.images])

    def __neg__(self):
        return Derivation([-img for img in self.images])

    def __eq__(self, other):
        return isinstance(other, Derivation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def to_str(self, names: Optional[Sequence[str]] = None) -> str:
        names = names or ("x", "y", "z")[: self.nvars]
        return "; ".join(f"D{n} = {img.to_str(names)}" for n, img in zip(names, self.images))

    def __repr__(self):
        return f"Derivation({self.ring.value}: {self.to_str()})"


def _check(D: Derivation, f: Poly):
    if f.ring is not D.ring or f.nvars != D.nvars:
        raise RingMismatch("polynomial and derivation live in different rings")


def d_apply(D: Derivation, f: Poly) -> Poly:
    _check(D, f)
    if f.is_zero() or D.is_zero():
        return Poly.zero(D.ring, D.nvars)
    return Poly._mk(D.ring, D.nvars, kernel.derive(f._t, D._flat, D.ring is RingId.CIRCLE))


def iterates(D: Derivation, f: Poly, bound: int = DEFAULT_BOUND) -> List[Poly]:
    """``[f, Df, D^2 f, ...]`` up to the last nonzero iterate.

    Raises BoundExceeded (witness ``D^bound f``) if ``D^bound f`` is nonzero.
    """
    _check(D, f)
    out = []
    cur = f
    for _ in range(bound):
        if cur.is_zero():
            return out
        out.append(cur)
        cur = d_apply(D, cur)
    if cur.is_zero():
        return out
    raise BoundExceeded(f"D^{bound} of the input is still nonzero", witness=cur, bound=bound)


@dataclass(frozen=True)
class NilpotenceCert:
    """Per-variable nilpotence orders; ``orders[i]`` is None when not reached."""

    certified: bool
    orders: Tuple[Optional[int], ...]
    bound: int
    witness: Optional[Poly] = None
    witness_var: Optional[int] = None


def certify_nilpotent(D: Derivation, bound: int = DEFAULT_BOUND) -> NilpotenceCert:
    if bound < 1:
        raise ValueError("bound must be at least 1")
    orders: List[Optional[int]] = []
    witness = wvar = None
    for i in range(D.nvars):
        try:
            orders.append(len(iterates(D, Poly.var(D.ring, D.nvars, i), bound)))
        except BoundExceeded as exc:
            orders.append(None)
            if witness is None:
                witness, wvar = exc.witness, i
    return NilpotenceCert(witness is None, tuple(orders), bound, witness, wvar)


def deg_d(D: Derivation, f: Poly, bound: int = DEFAULT_BOUND) -> int:
    """max{n : D^n f != 0}; raises ZeroInput for f = 0."""
    if f.is_zero():
        raise ZeroInput("deg_D(0) is -infinity")
    return len(iterates(D, f, bound + 1)) - 1


def mu_bar(D: Derivation, f: Poly, bound: int = DEFAULT_BOUND) -> int:
    """Maximum of deg_D over the monomials of ``f``."""
    if f.is_zero():
        raise ZeroInput("mu_bar(0) is -infinity")
    return max(deg_d(D, Poly.monomial(D.ring, D.nvars, m), bound) for m in f.monomials())


def homogeneity_degree(D: Derivation, weights: Sequence[int] = STANDARD) -> Optional[int]:
    """The d with ``deg D(x_i) = w_i + d`` for all nonzero images, else None.

    The zero derivation has no unique degree and gives None.
    """
    weights = tuple(weights)[: D.nvars]
    found = None
    for i, img in enumerate(D.images):
        if img.is_zero():
            continue
        deg = is_homogeneous(img, weights)
        if deg is None:
            return None
        d = deg - weights[i]
        if found is None:
            found = d
        elif found != d:
            return None
    return found


def jacobian_derivation(F: Poly, G: Poly) -> Derivation:
    """``h -> det Jacobian(F, G, h)`` on R[x, y, z]."""
    F._check(G)
    if F.nvars != 3:
        raise DimensionError("Jacobian derivations need exactly three variables")
    fx, fy, fz = (F.diff(i) for i in range(3))
    gx, gy, gz = (G.diff(i) for i in range(3))
    return Derivation([fy * gz - fz * gy, fz * gx - fx * gz, fx * gy - fy * gx])


def kernel_member(D: Derivation, f: Poly) -> bool:
    return d_apply(D, f).is_zero()


def is_local_slice(D: Derivation, f: Poly, bound: int = DEFAULT_BOUND) -> bool:
    df = d_apply(D, f)
    return not df.is_zero() and d_apply(D, df).is_zero()


def _is_unit_poly(p: Poly) -> bool:
    if not p.is_constant() or p.is_zero():
        return False
    return ring_is_unit(p.coeff((0,) * p.nvars))[0]


def is_irreducible(D: Derivation) -> bool:
    """The images have no common non-unit factor (zero derivation: False)."""
    if D.ring is RingId.CIRCLE:
        raise UnsupportedRing("irreducibility needs gcds, unavailable over the circle ring")
    imgs = [img for img in D.images if not img.is_zero()]
    if not imgs:
        return False
    g = imgs[0]
    for img in imgs[1:]:
        g = gcd_multivar(g, img)
    return _is_unit_poly(g)


def conjugate(D: Derivation, phi: Sequence[Poly], phi_inv: Sequence[Poly]) -> Derivation:
    """``phi o D o phi^-1`` for the endomorphism ``x_i -> phi[i]``.

    ``phi_inv`` must be its inverse; this is checked.
    """
    n = D.nvars
    amap = dict(enumerate(phi))
    imap = dict(enumerate(phi_inv))
    for i in range(n):
        if phi_inv[i].subs(amap) != Poly.var(D.ring, n, i):
            raise ValueError("phi_inv is not inverse to phi")
    return Derivation([d_apply(D, phi_inv[i]).subs(amap) for i in range(n)])


# ---------------------------------------------------------------------------
# linear forms and the filtration by deg_D


@dataclass(frozen=True)
class LinearForm:
    """``sum coeffs[i] * x_i`` over the fraction field of the coefficient ring."""

    coeffs: Tuple[FracElem, ...]

    @property
    def ring(self) -> RingId:
        return self.coeffs[0].ring

    def row(self) -> tuple:
        """Proportional row of ring elements with denominators cleared."""
        return clear_denominators(self.coeffs)

    def to_poly(self, cleared: bool = True) -> Poly:
        """The form as a polynomial (denominators cleared unless all trivial)."""
        entries = self.row() if cleared else [c.in_ring() for c in self.coeffs]
        if any(e is None for e in entries):
            raise ValueError("form has non-trivial denominators")
        n = len(entries)
        acc = Poly.zero(self.ring, n)
        for i, e in enumerate(entries):
            if not ring_is_zero(e):
                acc = acc + Poly.var(self.ring, n, i) * e
        return acc

    def is_proportional(self, other: Sequence) -> bool:
        vals = [x if isinstance(x, FracElem) else FracElem(self.ring, x) for x in other]
        return len(vals) == len(self.coeffs) and in_span(vals, [self.coeffs]) and any(not v.is_zero() for v in vals)

    def __str__(self):
        return self.to_str(("x", "y", "z")[: len(self.coeffs)])

    def to_str(self, names: Sequence[str]) -> str:
        if all(c.in_ring() is not None for c in self.coeffs):
            return self.to_poly(cleared=False).to_str(names[: len(self.coeffs)])
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            parts.append(names[i] if c == FracElem(c.ring, 1) else f"({c})*{names[i]}")
        return " + ".join(parts)


@dataclass(frozen=True)
class Stratum:
    m: int
    dim: int
    basis: Tuple[LinearForm, ...]


@dataclass(frozen=True)
class LinearFiltration:
    """Spaces of linear forms L with D^{m+1} L = 0, for m = 0, 1, ..."""

    strata: Tuple[Stratum, ...]
    orders: Tuple[int, ...]

    @property
    def jumps(self) -> Tuple[int, ...]:
        out, prev = [], 0
        for s in self.strata:
            if s.dim > prev:
                out.append(s.m)
            prev = s.dim
        return tuple(out)

    def stratum(self, m: int) -> Stratum:
        for s in self.strata:
            if s.m == m:
                return s
        return self.strata[-1]


def _linear_system(D: Derivation, powers: Sequence[Poly]):
    """Rows of the system ``sum_i c_i * powers[i] = 0`` (one row per monomial)."""
    maps = [p.terms for p in powers]
    monos = sorted({m for t in maps for m in t})
    zero = ring_zero(D.ring)
    return [[t.get(m, zero) for t in maps] for m in monos]


def linear_filtration(D: Derivation, bound: int = DEFAULT_BOUND) -> LinearFiltration:
    cert = certify_nilpotent(D, bound)
    if not cert.certified:
        raise BoundExceeded("derivation not certified nilpotent within the bound", cert.witness, bound)
    its = [iterates(D, Poly.var(D.ring, D.nvars, i), bound) for i in range(D.nvars)]
    n = D.nvars
    top = max(cert.orders)
    strata = []
    for m in range(max(top, 1)):
        powers = [its[i][m + 1] if m + 1 < len(its[i]) else Poly.zero(D.ring, n) for i in range(n)]
        basis = nullspace(_linear_system(D, powers), D.ring, n)
        strata.append(Stratum(m, len(basis), tuple(LinearForm(tuple(v)) for v in basis)))
        if len(basis) == n:
            break
    return LinearFiltration(tuple(strata), tuple(cert.orders))


def strict_triple(D: Derivation, bound: int = DEFAULT_BOUND):
    """One new form per jump of the filtration when there are three jumps.

    Returns ``((L1, m1), (L2, m2), (L3, m3))`` or None.
    """
    filt = linear_filtration(D, bound)
    if len(filt.jumps) < 3:
        return None
    picked = []
    prev: List[Tuple[FracElem, ...]] = []
    for m in filt.jumps:
        s = filt.stratum(m)
        new = next(L for L in s.basis if not in_span(L.coeffs, prev))
        picked.append((new, m))
        prev = [L.coeffs for L in s.basis]
    return tuple(picked)


@dataclass(frozen=True)
class RankBound:
    """Upper bound ``nvars - len(certified)`` with the evidence behind it."""

    bound: int
    kernel_forms: Tuple[LinearForm, ...]
    rows: Tuple[tuple, ...]
    certified: Tuple[tuple, ...]
    status: str
    bezout: Tuple = field(default=())


def _det(rows, cols):
    k = len(rows)
    if k == 1:
        return rows[0][cols[0]]
    acc = None
    for j, c in enumerate(cols):
        minor = _det([r for r in rows[1:]], cols[:j] + cols[j + 1 :])
        term = rows[0][c] * minor
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc


def _uni(x) -> UniPoly:
    return x if isinstance(x, UniPoly) else UniPoly((x,))


def _bezout_chain(entries):
    """Monic gcd of several Q[t] elements with cofactors: sum u_i e_i = g."""
    nz = [(i, _uni(e)) for i, e in enumerate(entries) if not _uni(e).is_zero()]
    if not nz:
        return UniPoly(), ()
    g = nz[0][1].monic()
    cof = {nz[0][0]: UniPoly((Fraction(1) / Fraction(nz[0][1].lc()),))}
    for i, e in nz[1:]:
        g2, u, v = uni_gcd_bezout(g, e)
        cof = {j: c * u for j, c in cof.items()}
        cof[i] = v
        g = g2
    return g, tuple(cof.get(i, UniPoly()) for i in range(len(entries)))


def rank_upper(D: Derivation, bound: int = DEFAULT_BOUND) -> RankBound:
    """Upper bound on rank(D) from variables among the linear kernel forms.

    A set of kernel rows counts only when it is certified to extend to a
    coordinate system: over Q always; over Q[t] when the maximal minors
    generate the unit ideal (Bezout witness); over the circle ring when some
    maximal minor is itself a unit.
    """
    filt = linear_filtration(D, bound)
    s0 = filt.strata[0]
    forms = s0.basis
    rows = tuple(L.row() for L in forms)
    n = D.nvars
    certified: Tuple[tuple, ...] = ()
    bezout = ()
    for k in range(len(rows), 0, -1):
        hit = None
        for sub in combinations(rows, k):
            minors = [_det(list(sub), list(cols)) for cols in combinations(range(n), k)]
            if D.ring is RingId.POLY_T:
                g, cof = _bezout_chain(minors)
                if g == UniPoly((1,)):
                    hit, bezout = sub, (tuple(minors), cof)
            elif any(not ring_is_zero(x) and ring_is_unit(x)[0] for x in minors):
                hit = sub
            if hit:
                break
        if hit:
            certified = hit
            break
    if not forms:
        status = "no linear kernel forms"
    elif len(certified) == len(forms):
        status = "kernel forms certified as variables"
    elif certified:
        status = "some kernel forms certified as variables; others undecided"
    else:
        status = "forms found, variable status undecided"
    return RankBound(n - len(certified), forms, rows, certified, status, bezout)


@dataclass(frozen=True)
class KernelType:
    p: int
    q: int
    d: int
    degenerate: bool


def kernel_type(F: Poly, G: Poly, weights: Sequence[int] = STANDARD) -> KernelType:
    dF = is_homogeneous(F, weights)
    dG = is_homogeneous(G, weights)
    if dF is None or dG is None or dF is NEG_INF or dG is NEG_INF:
        raise NotHomogeneous("kernel generators must be nonzero and homogeneous")
    p, q = sorted((dF, dG))
    d = p + q - 3
    return KernelType(p, q, d, d < 0)
