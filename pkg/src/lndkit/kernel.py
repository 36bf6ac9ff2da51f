"""Select the compiled kernel when it is importable, else the pure-Python one.

Set ``LNDKIT_PURE_PYTHON=1`` to force the fallback.  Rational inputs are
scaled to integers before reaching either kernel, and the common denominator
is divided out once per result term.
"""
import os
from fractions import Fraction
from math import lcm

from . import _kernel_py

_py = _kernel_py

if os.environ.get("LNDKIT_PURE_PYTHON", "") not in ("", "0"):
    _impl = _py
else:
    try:
        from . import _ckernel as _impl  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        _impl = _py

IMPLEMENTATION = _impl.IMPLEMENTATION
partial = _impl.partial
clean = _py.clean
circle_reduce = _py.circle_reduce

SHIFT = _py.SHIFT
MASK = _py.MASK
MAX_EXP = _py.MAX_EXP
W1 = _py.W1
W2 = _py.W2


def _denominator(d) -> int:
    den = 1
    for c in d.values():
        if type(c) is not int:
            den = lcm(den, c.denominator)
    return den


def _scaled(d, den: int):
    if den == 1:
        return d
    return {k: c.numerator * (den // c.denominator) if type(c) is not int else c * den for k, c in d.items()}


def _divided(d, den: int):
    if den == 1:
        return d
    out = {}
    for k, c in d.items():
        f = Fraction(c, den)
        out[k] = f.numerator if f.denominator == 1 else f
    return out


def mul(a, b, circle):
    da, db = _denominator(a), _denominator(b)
    return _divided(_impl.mul(_scaled(a, da), _scaled(b, db), circle), da * db)


def derive(a, images, circle):
    da = _denominator(a)
    di = 1
    for img in images:
        di = lcm(di, _denominator(img))
    return _divided(_impl.derive(_scaled(a, da), [_scaled(img, di) for img in images], circle), da * di)
