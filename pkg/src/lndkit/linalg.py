"""Exact linear algebra over the coefficient rings and their fraction fields.

Matrices hold ring elements.  Elimination is fraction-free (Bareiss), so the
echelon form and the rank never leave the ring; only the final
back-substitution passes to the fraction field, whose elements
(:class:`FracElem`) are kept in a canonical reduced form so equality is
structural.

A fraction over Q[t] is ``num/den`` with ``den`` monic and coprime to
``num``.  A fraction over the circle ring is ``(a + b*w1)/c`` with ``a, b, c``
in Q[w2], ``c`` monic and ``gcd(a, b, c) = 1``; every fraction can be put in
that shape by multiplying through by the conjugate of the denominator.
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .ring import (
    CircleElem,
    RingId,
    UniPoly,
    rat,
    ring_exact_div,
    ring_from_rational,
    ring_is_zero,
    ring_of,
    ring_zero,
    uni_gcd_bezout,
)

_ONE = UniPoly((1,))


def _ugcd(a: UniPoly, b: UniPoly) -> UniPoly:
    if a.is_zero() and b.is_zero():
        return _ONE
    return uni_gcd_bezout(a, b)[0]


class FracElem:
    """Canonical element of the fraction field of a coefficient ring."""

    __slots__ = ("ring", "num", "den")

    def __init__(self, ring: RingId, num, den=None):
        self.ring = ring
        if ring is RingId.Q:
            self.num = rat(Fraction(num) / Fraction(1 if den is None else den))
            self.den = 1
            return
        if isinstance(num, (int, Fraction)):
            num = ring_from_rational(ring, num)
        if den is None:
            den = _ONE
        elif isinstance(den, (int, Fraction)):
            den = UniPoly((den,))
        if ring is RingId.CIRCLE:
            if isinstance(den, CircleElem):
                num = num * den.conj()
                den = den.norm()
            a, b = num.a, num.b
            g = _ugcd(_ugcd(a, b), den)
            lead = Fraction(1) / Fraction((den.exact_div(g)).lc())
            self.num = CircleElem(a.exact_div(g) * rat(lead), b.exact_div(g) * rat(lead))
            self.den = den.exact_div(g) * rat(lead)
        else:
            g = _ugcd(num, den)
            lead = Fraction(1) / Fraction((den.exact_div(g)).lc())
            self.num = num.exact_div(g) * rat(lead)
            self.den = den.exact_div(g) * rat(lead)
        if self.is_zero():
            self.den = _ONE

    @classmethod
    def of(cls, x) -> "FracElem":
        return cls(ring_of(x), x)

    def is_zero(self) -> bool:
        return ring_is_zero(self.num)

    def _lift(self, other) -> "FracElem":
        if isinstance(other, FracElem):
            return other
        return FracElem(self.ring, ring_from_rational(self.ring, other) if isinstance(other, (int, Fraction)) else other)

    def __add__(self, other):
        o = self._lift(other)
        if self.ring is RingId.Q:
            return FracElem(self.ring, self.num + o.num)
        return FracElem(self.ring, _nd(self.num, o.den) + _nd(o.num, self.den), self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return FracElem(self.ring, -self.num, self.den)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __mul__(self, other):
        o = self._lift(other)
        if self.ring is RingId.Q:
            return FracElem(self.ring, self.num * o.num)
        return FracElem(self.ring, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "FracElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.ring is RingId.Q:
            return FracElem(self.ring, 1 / Fraction(self.num))
        if self.ring is RingId.CIRCLE:
            return FracElem(self.ring, CircleElem(self.den), self.num)  # den given as CircleElem
        return FracElem(self.ring, self.den, self.num)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __eq__(self, other):
        if not isinstance(other, FracElem):
            other = self._lift(other)
        return self.ring is other.ring and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.ring, self.num, self.den))

    def in_ring(self):
        """The ring element equal to this fraction, or None."""
        if self.ring is RingId.Q:
            return self.num
        if self.den.degree() > 0:
            return None
        return self.num

    def __str__(self):
        if self.ring is RingId.Q or self.den == _ONE:
            return str(self.num)
        var = "w2" if self.ring is RingId.CIRCLE else "t"
        return f"({self.num})/({self.den.to_str(var)})"

    __repr__ = __str__


def _nd(num, den: UniPoly):
    """Numerator times a denominator (a Q[w2] polynomial over the circle ring)."""
    if isinstance(num, CircleElem):
        return CircleElem(num.a * den, num.b * den)
    return num * den


def _ring_times_den(ring: RingId, x: FracElem, m):
    """``x * m`` as a ring element, where ``m`` is a common denominator."""
    if ring is RingId.Q:
        return rat(x.num * m)
    q = m.exact_div(x.den)
    if ring is RingId.CIRCLE:
        return x.num * CircleElem(q)
    return x.num * q


def clear_denominators(vec: Sequence[FracElem]):
    """Primitive ring row proportional to ``vec``.

    Over Q the first nonzero entry becomes positive and the entries coprime
    integers; over Q[t] the row has content 1 and a monic first nonzero
    entry; over the circle ring the Q[w2]-content of the row is removed.
    """
    ring = vec[0].ring
    if ring is RingId.Q:
        from math import gcd, lcm

        den = 1
        for x in vec:
            den = lcm(den, Fraction(x.num).denominator)
        row = [rat(Fraction(x.num) * den) for x in vec]
        g = 0
        for x in row:
            g = gcd(g, int(x))
        first = next(x for x in row if x != 0)
        g = g if first > 0 else -g
        return tuple(rat(Fraction(x, g)) for x in row)
    den = _ONE
    for x in vec:
        den = den * x.den.exact_div(_ugcd(den, x.den))
    row = [_ring_times_den(ring, x, den) for x in vec]
    cont = UniPoly()
    for x in row:
        if ring is RingId.CIRCLE:
            cont = _ugcd(_ugcd(cont, x.a), x.b)
        else:
            cont = _ugcd(cont, x)
    if ring is RingId.CIRCLE:
        row = [CircleElem(x.a.exact_div(cont), x.b.exact_div(cont)) for x in row]
        first = next(x for x in row if not x.is_zero())
        lead = first.b.lc() if not first.b.is_zero() else first.a.lc()
        inv = rat(Fraction(1) / Fraction(lead))
        return tuple(x * inv for x in row)
    row = [x.exact_div(cont) for x in row]
    first = next(x for x in row if not x.is_zero())
    inv = rat(Fraction(1) / Fraction(first.lc()))
    return tuple(x * inv for x in row)


def bareiss(matrix: Sequence[Sequence], ring: RingId):
    """Fraction-free row echelon form.

    Returns ``(echelon_rows, pivot_columns)``; the rows are ring elements and
    their number is the rank.
    """
    m = [list(r) for r in matrix if any(not ring_is_zero(x) for x in r)]
    ncols = len(matrix[0]) if matrix else 0
    prev = ring_from_rational(ring, 1)
    pr = 0
    pivots: List[int] = []
    for col in range(ncols):
        sel = next((i for i in range(pr, len(m)) if not ring_is_zero(m[i][col])), None)
        if sel is None:
            continue
        m[pr], m[sel] = m[sel], m[pr]
        piv = m[pr][col]
        for i in range(pr + 1, len(m)):
            lead = m[i][col]
            row = m[i]
            for j in range(col + 1, ncols):
                row[j] = ring_exact_div(piv * row[j] - lead * m[pr][j], prev)
            row[col] = ring_zero(ring)
        # drop rows that became zero to keep later steps short
        m = m[: pr + 1] + [r for r in m[pr + 1 :] if any(not ring_is_zero(x) for x in r)]
        prev = piv
        pivots.append(col)
        pr += 1
    return m[:pr], pivots


def rref(vectors: Sequence[Sequence[FracElem]]) -> List[Tuple[FracElem, ...]]:
    """Reduced row echelon basis (over the fraction field) of the span."""
    rows = [list(v) for v in vectors]
    if not rows:
        return []
    ncols = len(rows[0])
    out: List[List[FracElem]] = []
    for col in range(ncols):
        sel = next((i for i, r in enumerate(rows) if not r[col].is_zero()), None)
        if sel is None:
            continue
        piv = rows.pop(sel)
        inv = piv[col].inverse()
        piv = [x * inv for x in piv]
        for r in out:
            if not r[col].is_zero():
                f = r[col]
                for j in range(ncols):
                    r[j] = r[j] - f * piv[j]
        rows = [[r[j] - r[col] * piv[j] for j in range(ncols)] for r in rows]
        rows = [r for r in rows if any(not x.is_zero() for x in r)]
        out.append(piv)
    return [tuple(r) for r in out]


def nullspace(matrix: Sequence[Sequence], ring: RingId, ncols: int) -> List[Tuple[FracElem, ...]]:
    """RREF basis of ``{v : matrix * v = 0}`` over the fraction field."""
    if not matrix:
        ech, pivots = [], []
    else:
        ech, pivots = bareiss(matrix, ring)
    free = [j for j in range(ncols) if j not in pivots]
    zero = FracElem(ring, ring_zero(ring))
    basis = []
    for f in free:
        x = [zero] * ncols
        x[f] = FracElem(ring, ring_from_rational(ring, 1))
        for k in range(len(pivots) - 1, -1, -1):
            pc = pivots[k]
            acc = zero
            for j in range(pc + 1, ncols):
                if not ring_is_zero(ech[k][j]):
                    acc = acc + FracElem(ring, ech[k][j]) * x[j]
            x[pc] = -acc / FracElem(ring, ech[k][pc])
        basis.append(x)
    return rref(basis)


def in_span(vec: Sequence[FracElem], basis: Sequence[Sequence[FracElem]]) -> bool:
    if not any(not x.is_zero() for x in vec):
        return True
    return len(rref(list(basis) + [vec])) == len(rref(list(basis)))


def det3(m) -> object:
    """Determinant of a 3x3 matrix of ring or fraction-field elements."""
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def inverse_matrix(m: Sequence[Sequence[FracElem]]) -> Optional[List[List[FracElem]]]:
    """Gauss-Jordan inverse over the fraction field, None when singular."""
    n = len(m)
    ring = m[0][0].ring
    one = FracElem(ring, ring_from_rational(ring, 1))
    zero = FracElem(ring, ring_zero(ring))
    aug = [list(m[i]) + [one if i == j else zero for j in range(n)] for i in range(n)]
    for col in range(n):
        sel = next((i for i in range(col, n) if not aug[i][col].is_zero()), None)
        if sel is None:
            return None
        aug[col], aug[sel] = aug[sel], aug[col]
        inv = aug[col][col].inverse()
        aug[col] = [x * inv for x in aug[col]]
        for i in range(n):
            if i != col and not aug[i][col].is_zero():
                f = aug[i][col]
                aug[i] = [aug[i][j] - f * aug[col][j] for j in range(2 * n)]
    return [row[n:] for row in aug]
