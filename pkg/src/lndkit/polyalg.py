"""Exact division, gcd and n-th roots for :class:`~lndkit.poly.Poly`.

Everything here works on the flat representation, where Q[t][x,y,z] is just
Q[x,y,z,t] and packed keys compare lexicographically (slot 4 most
significant), which is a monomial order.  The circle ring is handled by
reduction to polynomial rings: division through the norm ``g * conj(g)``,
roots through the rational parametrisation of the circle.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd
from typing import Dict, List, Optional

from . import kernel
from .errors import DivisorZero, NotDivisible, UnsupportedRing
from .kernel import MASK, SHIFT, W1, W2
from .poly import MAIN_MASK, Poly, pack, unpack
from .ring import CircleElem, RingId, UniPoly, rat, rational_nth_root

Flat = Dict[int, object]
_SLOTS = 5
_S = W1  # parameter s of the circle sits in slot 3 of the polynomial model


def _slot(k: int, s: int) -> int:
    return (k >> (SHIFT * s)) & MASK


def _mono_divides(a: int, b: int) -> bool:
    """Does monomial ``a`` divide monomial ``b``?"""
    for s in range(_SLOTS):
        if _slot(a, s) > _slot(b, s):
            return False
    return True


def _sub_scaled(r: Flat, shift: int, c, g_items) -> None:
    for k, v in g_items:
        kk = shift + k
        nv = r.get(kk, 0) - c * v
        if nv:
            r[kk] = nv
        else:
            r.pop(kk, None)


def flat_divexact(f: Flat, g: Flat) -> Optional[Flat]:
    """Quotient ``f / g`` over Q in the plain polynomial ring, or None."""
    if not g:
        raise DivisorZero("division by the zero polynomial")
    r = dict(f)
    q: Flat = {}
    lg = max(g)
    cg = Fraction(g[lg])
    items = list(g.items())
    while r:
        lr = max(r)
        if not _mono_divides(lg, lr):
            return None
        m = lr - lg
        c = rat(Fraction(r[lr]) / cg)
        q[m] = c
        _sub_scaled(r, m, c, items)
    return q


def _conj(d: Flat) -> Flat:
    return {k: (-c if _slot(k, 3) else c) for k, c in d.items()}


def exact_divide(f: Poly, g: Poly) -> Poly:
    """``q`` with ``q * g == f``; raises NotDivisible or DivisorZero."""
    f._check(g)
    if g.is_zero():
        raise DivisorZero("division by the zero polynomial")
    if f.is_zero():
        return f
    if f.ring is not RingId.CIRCLE:
        q = flat_divexact(f._t, g._t)
        if q is None:
            raise NotDivisible("polynomial division leaves a remainder")
        return Poly._mk(f.ring, f.nvars, q)
    gc = _conj(g._t)
    num = kernel.mul(f._t, gc, True)
    norm = kernel.mul(g._t, gc, True)
    # norm is w1-free, so the two w1-components can be divided separately
    a = {k: c for k, c in num.items() if not _slot(k, 3)}
    b = {k - W1: c for k, c in num.items() if _slot(k, 3)}
    qa = flat_divexact(a, norm) if a else {}
    qb = flat_divexact(b, norm) if b else {}
    if qa is None or qb is None:
        raise NotDivisible("polynomial division leaves a remainder")
    q = dict(qa)
    q.update({k + W1: c for k, c in qb.items()})
    return Poly._mk(f.ring, f.nvars, q)


def divides(g: Poly, f: Poly) -> bool:
    try:
        exact_divide(f, g)
    except NotDivisible:
        return False
    return True


# ---------------------------------------------------------------------------
# gcd: primitive pseudo-remainder sequences, recursing on the last slot

def _sub(a: Flat, b: Flat) -> Flat:
    d = dict(a)
    for k, c in b.items():
        v = d.get(k, 0) - c
        if v:
            d[k] = v
        else:
            d.pop(k, None)
    return d


def _univ(a: Flat, v: int) -> Dict[int, Flat]:
    out: Dict[int, Flat] = {}
    s = SHIFT * v
    for k, c in a.items():
        e = (k >> s) & MASK
        out.setdefault(e, {})[k - (e << s)] = c
    return out


def _from_univ(u: Dict[int, Flat], v: int) -> Flat:
    s = SHIFT * v
    out: Flat = {}
    for e, coeff in u.items():
        for k, c in coeff.items():
            out[k + (e << s)] = c
    return out


def _rational_content(a: Flat):
    nums = 0
    dens = 1
    for c in a.values():
        f = Fraction(c)
        nums = igcd(nums, f.numerator)
        dens = dens * f.denominator // igcd(dens, f.denominator)
    return Fraction(nums, dens)


def _scale(a: Flat, c) -> Flat:
    return {k: rat(v * c) for k, v in a.items()}


def _content(u: Dict[int, Flat], rest: List[int]) -> Flat:
    g: Flat = {}
    for coeff in u.values():
        g = _gcd(g, coeff, rest)
        if g == {0: 1}:
            break
    return g


def _primpart(u: Dict[int, Flat], rest: List[int]) -> Dict[int, Flat]:
    if not rest:
        # constant coefficients: clear to coprime integers
        merged: Flat = {}
        for coeff in u.values():
            merged.update({len(merged) + i: c for i, c in enumerate(coeff.values())})
        inv = 1 / _rational_content(merged)
        return {e: _scale(c, inv) for e, c in u.items()}
    cont = _content(u, rest)
    out = {}
    for e, c in u.items():
        q = flat_divexact(c, cont)
        assert q is not None
        out[e] = q
    return out


def _prem(a: Dict[int, Flat], b: Dict[int, Flat]) -> Dict[int, Flat]:
    db = max(b)
    lcb = b[db]
    r = {e: c for e, c in a.items()}
    count = max(a) - db + 1
    while r and max(r) >= db:
        dr = max(r)
        lcr = r[dr]
        new: Dict[int, Flat] = {}
        for e, c in r.items():
            new[e] = kernel.mul(c, lcb, False)
        for e, c in b.items():
            t = kernel.mul(lcr, c, False)
            ee = e + dr - db
            new[ee] = _sub(new.get(ee, {}), t)
        r = {e: c for e, c in new.items() if c}
        count -= 1
    if count > 0 and r:
        f = lcb
        for _ in range(count - 1):
            f = kernel.mul(f, lcb, False)
        r = {e: kernel.mul(c, f, False) for e, c in r.items()}
    return r


def _gcd(a: Flat, b: Flat, slots: List[int]) -> Flat:
    if not a:
        return _monic(b)
    if not b:
        return _monic(a)
    if not slots:
        return {0: 1}
    v, rest = slots[-1], slots[:-1]
    ua, ub = _univ(a, v), _univ(b, v)
    c = _gcd(_content(ua, rest), _content(ub, rest), rest)
    pa, pb = _primpart(ua, rest), _primpart(ub, rest)
    if max(pa) < max(pb):
        pa, pb = pb, pa
    if max(pb) == 0:
        g: Dict[int, Flat] = {0: {0: 1}}
    else:
        while True:
            r = _prem(pa, pb)
            if not r:
                g = pb
                break
            if max(r) == 0:
                g = {0: {0: 1}}
                break
            pa, pb = pb, _primpart(r, rest)
    return _monic(kernel.mul(c, _from_univ(g, v), False))


def _monic(a: Flat) -> Flat:
    if not a:
        return a
    lead = Fraction(a[max(a)])
    return {k: rat(c / lead) for k, c in a.items()}


def _normalize_lead(p: Poly) -> Poly:
    """Scale so the grlex-leading main monomial has a monic/positive coefficient."""
    if p.is_zero():
        return p
    m = p.monomials()[0]
    base = pack(m)
    sub = {k: c for k, c in p._t.items() if k & MAIN_MASK == base}
    lead = Fraction(sub[max(sub)])
    return p.scale(1 / lead)


def gcd_multivar(f: Poly, g: Poly) -> Poly:
    f._check(g)
    if f.ring is RingId.CIRCLE:
        raise UnsupportedRing("gcd is only available over Q and Q[t]")
    if f.is_zero() and g.is_zero():
        return f
    used = [s for s in range(_SLOTS) if any(_slot(k, s) for k in f._t) or any(_slot(k, s) for k in g._t)]
    h = _gcd(f._t, g._t, used)
    return _normalize_lead(Poly._mk(f.ring, f.nvars, kernel.clean(h)))


# ---------------------------------------------------------------------------
# n-th roots

def _flat_pow(a: Flat, n: int) -> Flat:
    result: Flat = {0: 1}
    base = a
    while n:
        if n & 1:
            result = kernel.mul(result, base, False)
        n >>= 1
        if n:
            base = kernel.mul(base, base, False)
    return result


def flat_nth_root(f: Flat, n: int) -> Optional[Flat]:
    """Greedy term-by-term n-th root over Q; None when no root exists."""
    if n == 1 or not f:
        return dict(f)
    lk = max(f)
    lo = [min(_slot(k, s) for k in f) for s in range(_SLOTS)]
    hi = [max(_slot(k, s) for k in f) for s in range(_SLOTS)]
    if any(x % n for x in lo) or any(x % n for x in hi):
        return None
    lo = [x // n for x in lo]
    hi = [x // n for x in hi]
    if any(_slot(lk, s) % n for s in range(_SLOTS)):
        return None
    gk = sum((_slot(lk, s) // n) << (SHIFT * s) for s in range(_SLOTS))
    r0 = rational_nth_root(f[lk], n)
    if r0 is None:
        return None
    g: Flat = {gk: r0}
    denom = Fraction(n) * Fraction(r0) ** (n - 1)
    shift = (n - 1) * gk
    last = gk
    while True:
        rem = _sub(f, _flat_pow(g, n))
        if not rem:
            return g
        lr = max(rem)
        if lr < shift or not _mono_divides(shift, lr):
            return None
        m = lr - shift
        if m >= last:
            return None
        if any(not lo[s] <= _slot(m, s) <= hi[s] for s in range(_SLOTS)):
            return None
        g[m] = rat(Fraction(rem[lr]) / denom)
        last = m


def _sign_normalize(p: Poly) -> Poly:
    if p.is_zero():
        return p
    m = p.monomials()[0]
    base = pack(m)
    sub = {k: c for k, c in p._t.items() if k & MAIN_MASK == base}
    return -p if sub[max(sub)] < 0 else p


_ONE_PLUS_S2 = {0: 1, 2 * _S: 1}


def _circle_to_param(d: Flat):
    """Image of a circle-ring element under w1 = 2s/(1+s^2), w2 = (1-s^2)/(1+s^2).

    Returns ``(F, m)`` with ``F = (1+s^2)^m * image`` as a flat polynomial
    in slot 3 (= s).
    """
    m = max((_slot(k, 3) + _slot(k, 4) for k in d), default=0)
    two_s = UniPoly((0, 2))
    one_m = UniPoly((1, 0, -1))
    one_p = UniPoly((1, 0, 1))
    cache = {}
    out: Flat = {}
    for k, c in d.items():
        e1, e2 = _slot(k, 3), _slot(k, 4)
        key = (e1, e2)
        if key not in cache:
            cache[key] = (two_s ** e1) * (one_m ** e2) * (one_p ** (m - e1 - e2))
        base = k & MAIN_MASK
        for j, x in enumerate(cache[key].coeffs):
            if x:
                kk = base + j * _S
                out[kk] = out.get(kk, 0) + c * x
    return kernel.clean(out), m


def _param_to_circle(g: Flat, k: int, nvars: int) -> Optional[Poly]:
    """Map ``g / (1+s^2)^k`` back into the circle ring, if it lies there."""
    half = Fraction(1, 2)
    pieces = (
        CircleElem(UniPoly((half, -half))),  # s^2/(1+s^2) = (1 - w2)/2
        CircleElem(UniPoly(), UniPoly((half,))),  # s/(1+s^2) = w1/2
        CircleElem(UniPoly((half, half))),  # 1/(1+s^2) = (1 + w2)/2
    )
    acc = Poly.zero(RingId.CIRCLE, nvars)
    for key, c in g.items():
        e = _slot(key, 3)
        if e > 2 * k:
            return None
        c2, c1 = divmod(e, 2)
        c0 = k - c2 - c1
        val = (pieces[0] ** c2) * (pieces[1] ** c1) * (pieces[2] ** c0) * rat(c)
        mono = Poly.monomial(RingId.CIRCLE, nvars, unpack(key & MAIN_MASK, nvars))
        acc = acc + mono * val
    return acc


def nth_root(f: Poly, n: int) -> Optional[Poly]:
    """``g`` with ``g**n == f`` or None.

    For even ``n`` the root whose leading graded-lex coefficient is positive
    (monic up to a positive rational) is returned.
    """
    if n < 1:
        raise ValueError("root index must be >= 1")
    if n == 1 or f.is_zero():
        return f
    if f.ring is not RingId.CIRCLE:
        g = flat_nth_root(f._t, n)
        if g is None:
            return None
        root = Poly._mk(f.ring, f.nvars, kernel.clean(g))
    else:
        F, m = _circle_to_param(f._t)
        j = 0
        while True:
            q = flat_divexact(F, _ONE_PLUS_S2)
            if q is None:
                break
            F, j = q, j + 1
        if (m - j) % n or m < j:
            return None
        G = flat_nth_root(F, n)
        if G is None:
            return None
        root = _param_to_circle(G, (m - j) // n, f.nvars)
        if root is None:
            return None
    if n % 2 == 0:
        root = _sign_normalize(root)
    return root if root ** n == f else None
