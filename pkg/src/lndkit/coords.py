"""Linear coordinate changes of Q[x, y, z] with exact inverses.

A change is a matrix ``B`` whose rows are the new coordinates written as
linear forms in the old ones: ``u = B x``.  ``to_new`` rewrites a polynomial
of the old variables in the new ones (substitute ``x = B^-1 u``), ``to_old``
goes back.
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

from .derivation import Derivation, d_apply
from .errors import DimensionError, UnsupportedRing
from .poly import Poly
from .ring import RingId, rat

Matrix = List[List[Fraction]]


def invert(m: Sequence[Sequence]) -> Matrix:
    n = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col] != 0), None)
        if piv is None:
            raise ValueError("singular coordinate matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


def form_poly(row: Sequence, ring: RingId = RingId.Q) -> Poly:
    n = len(row)
    acc = Poly.zero(ring, n)
    for i, c in enumerate(row):
        if c:
            acc = acc + Poly.var(ring, n, i).scale(c)
    return acc


def linear_coeffs(f: Poly) -> List[Fraction]:
    """Coefficient row of a homogeneous linear polynomial over Q."""
    if f.ring is not RingId.Q:
        raise UnsupportedRing("linear coordinate changes are implemented over Q")
    row = [Fraction(0)] * f.nvars
    for exps, c in f.terms.items():
        if sum(exps) != 1:
            raise DimensionError("not a homogeneous linear form")
        row[exps.index(1)] = Fraction(c)
    return row


class CoordinateChange:
    def __init__(self, rows: Sequence[Sequence]):
        self.rows: Matrix = [[Fraction(x) for x in r] for r in rows]
        self.inv: Matrix = invert(self.rows)
        n = len(self.rows)
        self._new_vals = {i: form_poly(self.inv[i]) for i in range(n)}
        self._old_vals = {i: form_poly(self.rows[i]) for i in range(n)}

    @property
    def n(self) -> int:
        return len(self.rows)

    def to_new(self, f: Poly) -> Poly:
        return f.subs(self._new_vals)

    def to_old(self, f: Poly) -> Poly:
        return f.subs(self._old_vals)

    def derivation(self, D: Derivation) -> Derivation:
        """D written in the new coordinates: ``u_i -> D(u_i)`` re-expressed."""
        return Derivation([self.to_new(d_apply(D, self._old_vals[i])) for i in range(self.n)])

    def then(self, other: "CoordinateChange") -> "CoordinateChange":
        """Apply ``self`` first, then ``other`` (rows of ``other`` are in our new variables)."""
        n = self.n
        rows = [[sum(other.rows[i][k] * self.rows[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        return CoordinateChange(rows)

    def row_strings(self, names: Sequence[str] = ("x", "y", "z")) -> List[str]:
        return [form_poly(r).to_str(names) for r in self.rows]

    def __eq__(self, other):
        return isinstance(other, CoordinateChange) and self.rows == other.rows

    def __repr__(self):
        return f"CoordinateChange({[[str(rat(x)) for x in r] for r in self.rows]})"
