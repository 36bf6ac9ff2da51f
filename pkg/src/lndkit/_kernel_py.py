"""Pure-Python sparse kernels over packed exponent keys.

A term key packs five 12-bit exponent slots: main variables in slots 0-2,
coefficient-ring symbols in slots 3-4 (``t`` in slot 3, or ``w1``/``w2`` in
slots 3/4).  Multiplying monomials is adding keys.  Coefficients are ``int``
or ``Fraction``; every returned dict is clean (no zeros, integral values as
``int``).  ``circle`` requests the rewrite ``w1^2 -> 1 - w2^2`` on results.
"""
from fractions import Fraction

SHIFT = 12
MASK = (1 << SHIFT) - 1
MAX_EXP = MASK
NSLOTS = 5
W1 = 1 << (3 * SHIFT)
W2 = 1 << (4 * SHIFT)
W1_SQ = 2 * W1
W2_SQ = 2 * W2

IMPLEMENTATION = "python"


def clean(d):
    out = {}
    for k, c in d.items():
        if c:
            if type(c) is Fraction and c.denominator == 1:
                c = c.numerator
            out[k] = c
    return out


def circle_reduce(d):
    """Rewrite every term with w1-exponent >= 2 in place; returns ``d``."""
    todo = [k for k in d if (k >> (3 * SHIFT)) & MASK >= 2]
    while todo:
        nxt = []
        for k in todo:
            c = d.pop(k, 0)
            if not c:
                continue
            k1 = k - W1_SQ
            k2 = k1 + W2_SQ
            d[k1] = d.get(k1, 0) + c
            d[k2] = d.get(k2, 0) - c
            if (k1 >> (3 * SHIFT)) & MASK >= 2:
                nxt.append(k1)
                nxt.append(k2)
        todo = nxt
    return d


def mul(a, b, circle):
    if len(a) > len(b):
        a, b = b, a
    out = {}
    get = out.get
    bitems = list(b.items())
    for ka, ca in a.items():
        for kb, cb in bitems:
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    if circle:
        circle_reduce(out)
    return clean(out)


def partial(a, slot):
    shift = SHIFT * slot
    unit = 1 << shift
    out = {}
    for k, c in a.items():
        e = (k >> shift) & MASK
        if e:
            out[k - unit] = c * e
    return out


def derive(a, images, circle):
    """``sum_i d(a)/d(x_i) * images[i]`` without building the partials."""
    out = {}
    get = out.get
    slots = [(SHIFT * i, 1 << (SHIFT * i), list(img.items())) for i, img in enumerate(images) if img]
    for k, c in a.items():
        for shift, unit, img in slots:
            e = (k >> shift) & MASK
            if e:
                base = k - unit
                cc = c * e
                for k2, c2 in img:
                    kk = base + k2
                    out[kk] = get(kk, 0) + cc * c2
    if circle:
        circle_reduce(out)
    return clean(out)
