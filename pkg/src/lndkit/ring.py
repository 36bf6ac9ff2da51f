"""Coefficient rings: the rationals, Q[t], and the circle ring Q[w1,w2]/(w1^2+w2^2-1).

Rationals are plain ``int``/``Fraction`` values, kept canonical by :func:`rat`
(integral values collapse to ``int``).  ``UniPoly`` is a dense univariate
polynomial over Q; it doubles as the element type of Q[t] and as the
``w2``-polynomials inside :class:`CircleElem`, which stores ``a + b*w1`` with
the rewrite ``w1^2 -> 1 - w2^2`` already applied.
"""
from __future__ import annotations

import enum
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union

from .errors import BothZero, NotDivisible, DivisorZero, RingMismatch


def rat(x) -> Union[int, Fraction]:
    """Canonical rational: ``int`` when integral, reduced ``Fraction`` otherwise."""
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, Rational):
        return rat(Fraction(x.numerator, x.denominator))
    if isinstance(x, tuple) and len(x) == 2:
        return rat(Fraction(x[0], x[1]))
    if isinstance(x, str):
        return rat(Fraction(x))
    raise TypeError(f"not an exact rational: {x!r}")


def int_nth_root(n: int, k: int):
    """Exact integer k-th root of n >= 0, or None."""
    if n < 0:
        raise ValueError("negative radicand")
    if n < 2:
        return n
    lo, hi = 1, 1 << (n.bit_length() // k + 1)
    while lo <= hi:
        mid = (lo + hi) // 2
        p = mid ** k
        if p == n:
            return mid
        if p < n:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


def rational_nth_root(x, n: int):
    """k-th root in Q, choosing the positive root for even n; None if absent."""
    x = rat(x)
    if x == 0:
        return 0
    neg = x < 0
    if neg and n % 2 == 0:
        return None
    f = Fraction(abs(x))
    num = int_nth_root(f.numerator, n)
    den = int_nth_root(f.denominator, n)
    if num is None or den is None:
        return None
    r = rat(Fraction(num, den))
    return -r if neg else r


class RingId(enum.Enum):
    Q = "Q"
    POLY_T = "Q[t]"
    CIRCLE = "circle"

    @property
    def symbols(self) -> tuple:
        return {RingId.Q: (), RingId.POLY_T: ("t",), RingId.CIRCLE: ("w1", "w2")}[self]

    @classmethod
    def parse(cls, text: str) -> "RingId":
        key = text.strip()
        for r in cls:
            if r.value.lower() == key.lower():
                return r
        raise ValueError(f"unknown ring {text!r}; expected Q, Q[t] or circle")


class UniPoly:
    """Dense polynomial over Q in one variable; ``coeffs[i]`` multiplies ``var^i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c) -> "UniPoly":
        return cls((c,))

    @classmethod
    def x(cls) -> "UniPoly":
        return cls((0, 1))

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def _coerce(self, other):
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return UniPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result, base = UniPoly((1,)), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "UniPoly"):
        if other.is_zero():
            raise DivisorZero("division by the zero polynomial")
        rem = list(self.coeffs)
        db, lcb = other.degree(), other.lc()
        quo = [0] * max(len(rem) - db, 0)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            c = rat(Fraction(c) / lcb)
            quo[i - db] = c
            for j, y in enumerate(other.coeffs):
                rem[i - db + j] -= c * y
        return UniPoly(quo), UniPoly(rem[:db] if db > 0 else [])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise NotDivisible(f"{other} does not divide {self}")
        return q

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self * rat(Fraction(1) / Fraction(self.lc()))

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly((other,)).coeffs
        return NotImplemented

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.coeffs[0] if self.coeffs else 0)
        return hash(("UniPoly", self.coeffs))

    def to_str(self, var: str = "t") -> str:
        return _format_terms(
            [(c, f"{var}^{i}" if i > 1 else (var if i == 1 else "")) for i, c in reversed(list(enumerate(self.coeffs)))]
        )

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"UniPoly({list(self.coeffs)!r})"


def _format_terms(pairs) -> str:
    """Join (coefficient, monomial-string) pairs as ``a*m + b*m2 - ...``."""
    out = []
    for c, mono in pairs:
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        out.append((sign, body))
    if not out:
        return "0"
    first_sign, first = out[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


UniPolyT = UniPoly

_ONE_MINUS_W2SQ = UniPoly((1, 0, -1))


class CircleElem:
    """``a(w2) + b(w2)*w1`` in Q[w1,w2]/(w1^2 + w2^2 - 1)."""

    __slots__ = ("a", "b")

    def __init__(self, a=UniPoly(), b=UniPoly()):
        self.a = a if isinstance(a, UniPoly) else UniPoly((a,))
        self.b = b if isinstance(b, UniPoly) else UniPoly((b,))

    @classmethod
    def const(cls, c) -> "CircleElem":
        return cls(UniPoly((c,)))

    @classmethod
    def w1(cls) -> "CircleElem":
        return cls(UniPoly(), UniPoly((1,)))

    @classmethod
    def w2(cls) -> "CircleElem":
        return cls(UniPoly((0, 1)))

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def is_rational(self) -> bool:
        return self.b.is_zero() and self.a.is_constant()

    def _coerce(self, other):
        if isinstance(other, CircleElem):
            return other
        if isinstance(other, (int, Fraction)):
            return CircleElem.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CircleElem(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return CircleElem(-self.a, -self.b)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CircleElem(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        return CircleElem(a1 * a2 + b1 * b2 * _ONE_MINUS_W2SQ, a1 * b2 + a2 * b1)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result, base = CircleElem.const(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> "CircleElem":
        """Image under the automorphism w1 -> -w1."""
        return CircleElem(self.a, -self.b)

    def norm(self) -> UniPoly:
        """``self * conj(self)``, which always lies in Q[w2]."""
        return self.a * self.a - self.b * self.b * _ONE_MINUS_W2SQ

    def exact_div(self, other: "CircleElem") -> "CircleElem":
        if other.is_zero():
            raise DivisorZero("division by zero in the circle ring")
        num = self * other.conj()
        n = other.norm()
        return CircleElem(num.a.exact_div(n), num.b.exact_div(n))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CircleElem.const(other)
        if not isinstance(other, CircleElem):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        if self.b.is_zero():
            return hash(self.a)
        return hash(("Circle", self.a.coeffs, self.b.coeffs))

    def __str__(self):
        if self.b.is_zero():
            return self.a.to_str("w2")
        pairs = [(c, f"w2^{i}" if i > 1 else ("w2" if i == 1 else "")) for i, c in reversed(list(enumerate(self.a.coeffs)))]
        pairs += [(c, "w1" + (f"*w2^{i}" if i > 1 else ("*w2" if i == 1 else ""))) for i, c in reversed(list(enumerate(self.b.coeffs)))]
        # w1 terms first, matching the printer of multivariate coefficients
        return _format_terms(pairs[len(self.a.coeffs):] + pairs[: len(self.a.coeffs)])

    def __repr__(self):
        return f"CircleElem({self.a!r}, {self.b!r})"


RingElem = Union[int, Fraction, UniPoly, CircleElem]


def ring_of(x) -> RingId:
    if isinstance(x, (int, Fraction)):
        return RingId.Q
    if isinstance(x, CircleElem):
        return RingId.CIRCLE
    if isinstance(x, UniPoly):
        return RingId.POLY_T
    raise TypeError(f"not a ring element: {x!r}")


def ring_normalize(ring: RingId, raw) -> RingElem:
    """Canonical element of ``ring`` from a loose description.

    Q accepts anything :func:`rat` does.  Q[t] accepts a coefficient sequence
    or a mapping ``exponent -> coefficient``.  The circle ring accepts a mapping
    ``(i, j) -> coefficient`` for ``w1^i * w2^j`` (any ``i``), and reduces it
    with ``w1^2 -> 1 - w2^2``.
    """
    if ring is RingId.Q:
        return rat(raw)
    if ring is RingId.POLY_T:
        if isinstance(raw, UniPoly):
            return raw
        if isinstance(raw, Mapping):
            n = max(raw, default=-1) + 1
            cs = [0] * n
            for e, c in raw.items():
                cs[e] += rat(c)
            return UniPoly(cs)
        if isinstance(raw, (int, Fraction)):
            return UniPoly((raw,))
        return UniPoly(raw)
    if isinstance(raw, CircleElem):
        return raw
    if isinstance(raw, (int, Fraction)):
        return CircleElem.const(raw)
    acc = CircleElem()
    w2 = UniPoly((0, 1))
    for (i, j), c in raw.items():
        # w1^i = w1^(i mod 2) * (1 - w2^2)^(i // 2)
        part = (w2 ** j) * (_ONE_MINUS_W2SQ ** (i // 2)) * rat(c)
        acc = acc + (CircleElem(UniPoly(), part) if i % 2 else CircleElem(part))
    return acc


def _check_same(x, y):
    rx, ry = ring_of(x), ring_of(y)
    if rx is not ry:
        raise RingMismatch(f"cannot combine {rx.value} and {ry.value} elements")


def ring_arith(op: str, x, y=None) -> RingElem:
    if op == "neg":
        return rat(-x) if ring_of(x) is RingId.Q else -x
    _check_same(x, y)
    if op == "add":
        r = x + y
    elif op == "sub":
        r = x - y
    elif op == "mul":
        r = x * y
    else:
        raise ValueError(f"unknown ring operation {op!r}")
    return rat(r) if isinstance(r, (int, Fraction)) else r


def ring_is_unit(x):
    """``(True, inverse)`` for units, ``(False, None)`` otherwise.

    Circle-ring units are recognised only when they are nonzero rational
    constants; that is all the library ever needs to invert.
    """
    if isinstance(x, (int, Fraction)):
        return (True, rat(Fraction(1) / Fraction(x))) if x != 0 else (False, None)
    if isinstance(x, CircleElem):
        if x.is_rational() and not x.is_zero():
            return True, CircleElem.const(rat(Fraction(1) / Fraction(x.a.lc())))
        return False, None
    if isinstance(x, UniPoly):
        if x.degree() == 0:
            return True, UniPoly((rat(Fraction(1) / Fraction(x.lc())),))
        return False, None
    raise TypeError(f"not a ring element: {x!r}")


def uni_gcd_bezout(a: UniPoly, b: UniPoly):
    """Monic ``g = gcd(a, b)`` with ``u*a + v*b == g``."""
    if a.is_zero() and b.is_zero():
        raise BothZero("gcd of two zero polynomials")
    r0, r1 = a, b
    s0, s1 = UniPoly((1,)), UniPoly()
    t0, t1 = UniPoly(), UniPoly((1,))
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    inv = rat(Fraction(1) / Fraction(r0.lc()))
    return r0 * inv, s0 * inv, t0 * inv


# ---------------------------------------------------------------------------
# per-ring element helpers used by the linear algebra and by Poly conversion

def ring_zero(ring: RingId):
    return {RingId.Q: 0, RingId.POLY_T: UniPoly(), RingId.CIRCLE: CircleElem()}[ring]


def ring_one(ring: RingId):
    return ring_from_rational(ring, 1)


def ring_from_rational(ring: RingId, c):
    c = rat(c)
    if ring is RingId.Q:
        return c
    if ring is RingId.POLY_T:
        return UniPoly((c,))
    return CircleElem.const(c)


def ring_is_zero(x) -> bool:
    if isinstance(x, (int, Fraction)):
        return x == 0
    return x.is_zero()


def ring_exact_div(x, y):
    """``x / y`` in the ring, raising NotDivisible when it leaves the ring."""
    _check_same(x, y)
    if isinstance(x, (int, Fraction)):
        if y == 0:
            raise DivisorZero("division by zero")
        return rat(Fraction(x) / Fraction(y))
    return x.exact_div(y)


def ring_coerce(ring: RingId, x):
    """Lift a rational (or same-ring element) into ``ring``."""
    if isinstance(x, (int, Fraction)) or isinstance(x, Rational):
        return ring_from_rational(ring, x)
    if ring_of(x) is not ring:
        raise RingMismatch(f"{x!r} is not an element of {ring.value}")
    return x


def ring_str(x) -> str:
    if isinstance(x, (int, Fraction)):
        return str(x)
    return str(x)
