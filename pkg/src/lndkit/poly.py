"""Sparse polynomials in up to three main variables over a coefficient ring.

Terms live in a flat dict keyed by packed exponents (see ``_kernel_py``); the
coefficient-ring symbols ``t``/``w1``/``w2`` occupy their own slots, so a Poly
over Q[t] is stored as a polynomial over Q in ``x, y, z, t``.  The public view,
:attr:`Poly.terms`, regroups that into ``ExpVec -> RingElem`` in
graded-lexicographic order.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from . import kernel
from .kernel import MASK, SHIFT, W1, W2
from .ring import (
    CircleElem,
    RingId,
    UniPoly,
    _format_terms,
    rat,
    ring_of,
)
from .errors import DimensionError, RingMismatch

ExpVec = Tuple[int, ...]
MAX_VARS = 3
MAIN_MASK = (1 << (MAX_VARS * SHIFT)) - 1
SYM0 = MAX_VARS * SHIFT
T = W1  # the symbol t shares slot 3 with w1
DEFAULT_NAMES = ("x", "y", "z")


class _NegInf:
    """Weighted degree of the zero polynomial; below every integer."""

    def __lt__(self, other):
        return not isinstance(other, _NegInf)

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return isinstance(other, _NegInf)

    def __eq__(self, other):
        return isinstance(other, _NegInf)

    def __hash__(self):
        return hash("-inf")

    def __repr__(self):
        return "-inf"


NEG_INF = _NegInf()


def pack(exps: Sequence[int]) -> int:
    key = 0
    for i, e in enumerate(exps):
        if e < 0 or e > MASK:
            raise OverflowError(f"exponent {e} out of range")
        key |= e << (SHIFT * i)
    return key


def unpack(key: int, n: int) -> ExpVec:
    return tuple((key >> (SHIFT * i)) & MASK for i in range(n))


def _grlex(exps: ExpVec):
    return (sum(exps), exps)


def elem_to_flat(ring: RingId, c) -> Dict[int, object]:
    """Flat dict (symbol slots only) for a ring element or rational."""
    if isinstance(c, (int, Fraction)):
        c = rat(c)
        return {0: c} if c else {}
    r = ring_of(c)
    if r is not ring:
        raise RingMismatch(f"coefficient from {r.value} used in {ring.value}")
    if isinstance(c, CircleElem):
        d = {j * W2: x for j, x in enumerate(c.a.coeffs) if x}
        d.update({W1 + j * W2: x for j, x in enumerate(c.b.coeffs) if x})
        return d
    return {i * T: x for i, x in enumerate(c.coeffs) if x}


def flat_to_elem(ring: RingId, d: Mapping[int, object]):
    """Inverse of :func:`elem_to_flat` for a dict whose keys use symbol slots only."""
    if ring is RingId.Q:
        return d.get(0, 0)
    if ring is RingId.POLY_T:
        n = max((k >> SYM0 for k in d), default=-1) + 1
        cs = [0] * n
        for k, c in d.items():
            cs[k >> SYM0] = c
        return UniPoly(cs)
    a, b = {}, {}
    for k, c in d.items():
        e1 = (k >> SYM0) & MASK
        e2 = (k >> (SYM0 + SHIFT)) & MASK
        (b if e1 else a)[e2] = c
    mk = lambda m: UniPoly([m.get(i, 0) for i in range(max(m, default=-1) + 1)])
    return CircleElem(mk(a), mk(b))


class Poly:
    """Immutable sparse polynomial; ``terms`` maps exponent vectors to ring elements."""

    __slots__ = ("ring", "nvars", "_t", "_hash", "_maxexp")

    def __init__(self, ring: RingId, nvars: int, terms: Optional[Mapping] = None):
        if not 0 <= nvars <= MAX_VARS:
            raise DimensionError(f"at most {MAX_VARS} main variables are supported")
        d: Dict[int, object] = {}
        for exps, c in (terms or {}).items():
            if len(exps) != nvars:
                raise DimensionError(f"exponent vector {exps} does not have length {nvars}")
            base = pack(exps)
            for k, x in elem_to_flat(ring, c).items():
                d[base + k] = d.get(base + k, 0) + x
        self._init(ring, nvars, kernel.clean(d))

    def _init(self, ring, nvars, d):
        self.ring = ring
        self.nvars = nvars
        self._t = d
        self._hash = None
        self._maxexp = None

    @classmethod
    def _mk(cls, ring: RingId, nvars: int, d: Dict[int, object]) -> "Poly":
        p = cls.__new__(cls)
        p._init(ring, nvars, d)
        return p

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, ring: RingId, nvars: int) -> "Poly":
        return cls._mk(ring, nvars, {})

    @classmethod
    def const(cls, ring: RingId, nvars: int, c) -> "Poly":
        return cls._mk(ring, nvars, elem_to_flat(ring, c))

    @classmethod
    def one(cls, ring: RingId, nvars: int) -> "Poly":
        return cls._mk(ring, nvars, {0: 1})

    @classmethod
    def var(cls, ring: RingId, nvars: int, i: int) -> "Poly":
        if not 0 <= i < nvars:
            raise DimensionError(f"variable index {i} out of range for {nvars} variables")
        return cls._mk(ring, nvars, {1 << (SHIFT * i): 1})

    @classmethod
    def gens(cls, ring: RingId, nvars: int):
        return tuple(cls.var(ring, nvars, i) for i in range(nvars))

    @classmethod
    def symbol(cls, ring: RingId, nvars: int, name: str) -> "Poly":
        """The coefficient-ring symbol ``t``, ``w1`` or ``w2`` as a constant polynomial."""
        if name not in ring.symbols:
            raise RingMismatch(f"{name!r} is not a symbol of {ring.value}")
        return cls._mk(ring, nvars, {W2 if name == "w2" else W1: 1})

    @classmethod
    def monomial(cls, ring: RingId, nvars: int, exps: ExpVec, coeff=1) -> "Poly":
        return cls(ring, nvars, {tuple(exps): coeff})

    # -- basic queries ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def is_constant(self) -> bool:
        return all(not (k & MAIN_MASK) for k in self._t)

    def __len__(self):
        return len(self._t)

    def _check(self, other: "Poly"):
        if self.ring is not other.ring or self.nvars != other.nvars:
            raise RingMismatch(
                f"incompatible polynomials: {self.ring.value}/{self.nvars} vs {other.ring.value}/{other.nvars}"
            )

    def _coerce(self, other) -> Optional["Poly"]:
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, UniPoly, CircleElem)):
            return Poly.const(self.ring, self.nvars, other)
        return None

    def _group(self) -> Dict[int, Dict[int, object]]:
        groups: Dict[int, Dict[int, object]] = {}
        for k, c in self._t.items():
            m = k & MAIN_MASK
            groups.setdefault(m, {})[k - m] = c
        return groups

    @property
    def terms(self) -> Dict[ExpVec, object]:
        """``ExpVec -> RingElem`` in graded-lex descending order."""
        out = {}
        for m, sub in self._group().items():
            out[unpack(m, self.nvars)] = flat_to_elem(self.ring, sub)
        return dict(sorted(out.items(), key=lambda kv: _grlex(kv[0]), reverse=True))

    def monomials(self) -> list:
        ms = {unpack(k & MAIN_MASK, self.nvars) for k in self._t}
        return sorted(ms, key=_grlex, reverse=True)

    def coeff(self, exps: ExpVec):
        base = pack(exps)
        sub = {k - base: c for k, c in self._t.items() if k & MAIN_MASK == base}
        return flat_to_elem(self.ring, sub)

    def coeff_poly(self, exps: ExpVec) -> "Poly":
        """The coefficient of a main monomial, as a constant polynomial."""
        base = pack(exps)
        return Poly._mk(self.ring, self.nvars, {k - base: c for k, c in self._t.items() if k & MAIN_MASK == base})

    def leading(self):
        """(ExpVec, RingElem) of the graded-lex largest main monomial."""
        if not self._t:
            raise ValueError("zero polynomial has no leading term")
        m = self.monomials()[0]
        return m, self.coeff(m)

    def degree(self, i: int) -> int:
        if not self._t:
            return -1
        s = SHIFT * i
        return max((k >> s) & MASK for k in self._t)

    def min_degree(self, i: int) -> int:
        s = SHIFT * i
        return min((k >> s) & MASK for k in self._t) if self._t else -1

    def total_degree(self) -> int:
        if not self._t:
            return -1
        return max(sum(unpack(k, self.nvars)) for k in self._t)

    def variables(self) -> set:
        """Indices of main variables that actually occur."""
        return {i for i in range(self.nvars) if self.degree(i) > 0}

    def max_exponent(self) -> int:
        if self._maxexp is None:
            m = 0
            for k in self._t:
                while k:
                    e = k & MASK
                    if e > m:
                        m = e
                    k >>= SHIFT
            self._maxexp = m
        return self._maxexp

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = dict(self._t)
        for k, c in o._t.items():
            d[k] = d.get(k, 0) + c
        return Poly._mk(self.ring, self.nvars, kernel.clean(d))

    __radd__ = __add__

    def __neg__(self):
        return Poly._mk(self.ring, self.nvars, {k: -c for k, c in self._t.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = dict(self._t)
        for k, c in o._t.items():
            d[k] = d.get(k, 0) - c
        return Poly._mk(self.ring, self.nvars, kernel.clean(d))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Poly":
        c = rat(c)
        if c == 0:
            return Poly.zero(self.ring, self.nvars)
        return Poly._mk(self.ring, self.nvars, kernel.clean({k: v * c for k, v in self._t.items()}))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self._t or not o._t:
            return Poly.zero(self.ring, self.nvars)
        if self.max_exponent() + o.max_exponent() > MASK - 2:
            raise OverflowError("exponent exceeds the packed-key range")
        return Poly._mk(self.ring, self.nvars, kernel.mul(self._t, o._t, self.ring is RingId.CIRCLE))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly.one(self.ring, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring is other.ring and self.nvars == other.nvars and self._t == other._t
        if isinstance(other, (int, Fraction, UniPoly, CircleElem)):
            try:
                return self == Poly.const(self.ring, self.nvars, other)
            except RingMismatch:
                return False
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.nvars, frozenset(self._t.items())))
        return self._hash

    # -- calculus and substitution -------------------------------------------
    def diff(self, i: int) -> "Poly":
        if not 0 <= i < self.nvars:
            raise DimensionError(f"variable index {i} out of range")
        return Poly._mk(self.ring, self.nvars, kernel.partial(self._t, i))

    def subs(self, assignment: Mapping[int, "Poly"], nvars: Optional[int] = None) -> "Poly":
        """Simultaneous substitution ``x_i -> assignment[i]``.

        Variables missing from ``assignment`` stay put (only allowed when the
        target has the same number of variables).  ``nvars`` is the variable
        count of the targets, defaulting to ``self.nvars``.
        """
        tn = self.nvars if nvars is None else nvars
        targets = []
        for i in range(self.nvars):
            if i in assignment:
                p = assignment[i]
                if not isinstance(p, Poly):
                    p = Poly.const(self.ring, tn, p)
                if p.ring is not self.ring or p.nvars != tn:
                    raise RingMismatch("substitution target from a different polynomial ring")
                targets.append(p)
            else:
                if tn != self.nvars:
                    raise DimensionError(f"no value given for variable {i}")
                targets.append(Poly.var(self.ring, tn, i))
        powers = [[Poly.one(self.ring, tn)] for _ in range(self.nvars)]

        def power(i, e):
            row = powers[i]
            while len(row) <= e:
                row.append(row[-1] * targets[i])
            return row[e]

        acc = Poly.zero(self.ring, tn)
        for m, sub in self._group().items():
            term = Poly._mk(self.ring, tn, dict(sub))
            for i, e in enumerate(unpack(m, self.nvars)):
                if e:
                    term = term * power(i, e)
            acc = acc + term
        return acc

    def set_var(self, i: int, value) -> "Poly":
        """Substitute a constant for one variable, keeping the ambient ring."""
        val = value if isinstance(value, Poly) else Poly.const(self.ring, self.nvars, value)
        return self.subs({i: val})

    def drop_var(self, i: int) -> "Poly":
        """Set ``x_i = 0`` and remove that variable, renumbering the rest."""
        keep = [j for j in range(self.nvars) if j != i]
        return self.restrict_to(keep, require_absent=False)

    def restrict_to(self, keep: Sequence[int], require_absent: bool = True) -> "Poly":
        """Re-index onto variables ``keep`` (in that order).

        Terms that involve a dropped variable are discarded, or rejected when
        ``require_absent`` is set.
        """
        n = len(keep)
        d = {}
        for k, c in self._t.items():
            exps = unpack(k, self.nvars)
            if any(exps[j] for j in range(self.nvars) if j not in keep):
                if require_absent:
                    raise DimensionError("polynomial involves a variable being removed")
                continue
            d[pack([exps[j] for j in keep]) + (k - (k & MAIN_MASK))] = c
        return Poly._mk(self.ring, n, d)

    def embed(self, nvars: int, positions: Sequence[int]) -> "Poly":
        """Place variable ``j`` of ``self`` at index ``positions[j]`` of a larger ring."""
        d = {}
        for k, c in self._t.items():
            exps = unpack(k, self.nvars)
            new = [0] * nvars
            for j, e in enumerate(exps):
                new[positions[j]] = e
            d[pack(new) + (k - (k & MAIN_MASK))] = c
        return Poly._mk(self.ring, nvars, d)

    # -- gradings -----------------------------------------------------------
    def weighted_parts(self, weights: Sequence[int]) -> Dict[int, "Poly"]:
        return weighted_parts(self, weights)

    # -- printing -----------------------------------------------------------
    def to_str(self, names: Optional[Sequence[str]] = None) -> str:
        names = tuple(names) if names is not None else DEFAULT_NAMES[: self.nvars]
        if not self._t:
            return "0"
        groups = self._group()
        parts = []
        for m in sorted(groups, key=lambda m: _grlex(unpack(m, self.nvars)), reverse=True):
            exps = unpack(m, self.nvars)
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(exps) if e
            )
            coeff = groups[m]
            if len(coeff) == 1:
                (sk, c), = coeff.items()
                sym = _sym_str(self.ring, sk)
                full = "*".join(s for s in (sym, mono) if s)
                parts.append((c, full))
            else:
                body = _coeff_str(self.ring, coeff)
                parts.append((1, f"({body})*{mono}" if mono else f"({body})"))
        return _format_terms(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Poly({self.ring.value}, {self.nvars}, {self.to_str()!r})"


def _sym_str(ring: RingId, sk: int) -> str:
    e3 = (sk >> SYM0) & MASK
    e4 = (sk >> (SYM0 + SHIFT)) & MASK
    names = ring.symbols
    out = []
    for name, e in zip(names, (e3, e4)):
        if e:
            out.append(name if e == 1 else f"{name}^{e}")
    return "*".join(out)


def _sym_order(sk: int):
    e3 = (sk >> SYM0) & MASK
    e4 = (sk >> (SYM0 + SHIFT)) & MASK
    return (e3 + e4, e3, e4)


def _coeff_str(ring: RingId, sub: Mapping[int, object]) -> str:
    return _format_terms([(sub[k], _sym_str(ring, k)) for k in sorted(sub, key=_sym_order, reverse=True)])


def weighted_degree(exps: ExpVec, weights: Sequence[int]) -> int:
    return sum(e * w for e, w in zip(exps, weights))


def weighted_parts(f: Poly, weights: Sequence[int]) -> Dict[int, Poly]:
    """Split ``f`` into weighted-homogeneous parts (symbols weigh 0)."""
    if len(weights) != f.nvars:
        raise DimensionError("weight vector length differs from the variable count")
    parts: Dict[int, Dict[int, object]] = {}
    for k, c in f._t.items():
        w = weighted_degree(unpack(k, f.nvars), weights)
        parts.setdefault(w, {})[k] = c
    return {w: Poly._mk(f.ring, f.nvars, d) for w, d in sorted(parts.items())}


def is_homogeneous(f: Poly, weights: Sequence[int]):
    """The unique weighted degree of ``f``, ``NEG_INF`` for zero, else None."""
    if f.is_zero():
        return NEG_INF
    parts = weighted_parts(f, weights)
    return next(iter(parts)) if len(parts) == 1 else None


def top_part(f: Poly, weights: Sequence[int]) -> Poly:
    if f.is_zero():
        return f
    parts = weighted_parts(f, weights)
    return parts[max(parts)]


def weighted_top_degree(f: Poly, weights: Sequence[int]):
    if f.is_zero():
        return NEG_INF
    return max(weighted_degree(unpack(k, f.nvars), weights) for k in f._t)


def substitute(f: Poly, assignment: Mapping[int, Poly]) -> Poly:
    if not assignment:
        return f
    tn = next(iter(assignment.values())).nvars
    return f.subs(assignment, nvars=tn)


def partial(f: Poly, var: int) -> Poly:
    return f.diff(var)


def support_points(f: Poly, pair: Tuple[int, int]) -> set:
    i, j = pair
    pts = {(0, 0)}
    for k in f._t:
        e = unpack(k, f.nvars)
        pts.add((e[i], e[j]))
    return pts
