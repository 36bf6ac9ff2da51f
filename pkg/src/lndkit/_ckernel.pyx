# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled sparse kernels; same contract as ``_kernel_py``.

When every coefficient is an int below 2^31 in absolute value, products are
accumulated in a C open-addressing table with 128-bit sums, and the circle
rewrite ``w1^2 -> 1 - w2^2`` is applied as terms are inserted.  Anything
else (Fractions, big integers, unreduced circle keys) goes through a typed
version of the generic dictionary loop.
"""
from fractions import Fraction

from libc.stdlib cimport malloc, free
from libc.stdint cimport int64_t, uint64_t

cdef extern from *:
    """
    typedef __int128 lnd_i128;

    static PyObject *lnd_i128_to_py(lnd_i128 v) {
        if (v >= (lnd_i128)INT64_MIN && v <= (lnd_i128)INT64_MAX)
            return PyLong_FromLongLong((long long)v);
        int neg = v < 0;
        unsigned __int128 u = neg ? (unsigned __int128)(-v) : (unsigned __int128)v;
        PyObject *hi = PyLong_FromUnsignedLongLong((unsigned long long)(u >> 64));
        PyObject *lo = PyLong_FromUnsignedLongLong((unsigned long long)u);
        PyObject *sh = PyLong_FromLong(64);
        PyObject *t = PyNumber_Lshift(hi, sh);
        PyObject *r = PyNumber_Or(t, lo);
        Py_DECREF(hi); Py_DECREF(lo); Py_DECREF(sh); Py_DECREF(t);
        if (neg) { PyObject *n = PyNumber_Negative(r); Py_DECREF(r); r = n; }
        return r;
    }
    """
    ctypedef long long lnd_i128
    object lnd_i128_to_py(lnd_i128 v)

cdef enum:
    SHIFT = 12
    MASK = 4095

SMALL = 1 << 31

IMPLEMENTATION = "cython"

cdef int64_t W1 = (<int64_t>1) << (3 * SHIFT)
cdef int64_t W2 = (<int64_t>1) << (4 * SHIFT)


cdef struct Table:
    int64_t *keys
    lnd_i128 *vals
    Py_ssize_t cap
    Py_ssize_t used


cdef int table_init(Table *t, Py_ssize_t hint) except -1:
    cdef Py_ssize_t cap = 16
    while cap < 2 * hint:
        cap <<= 1
    t.keys = <int64_t *>malloc(cap * sizeof(int64_t))
    t.vals = <lnd_i128 *>malloc(cap * sizeof(lnd_i128))
    if t.keys == NULL or t.vals == NULL:
        free(t.keys)
        free(t.vals)
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(cap):
        t.keys[i] = -1
    t.cap = cap
    t.used = 0
    return 0


cdef void table_free(Table *t):
    free(t.keys)
    free(t.vals)
    t.keys = NULL
    t.vals = NULL


cdef inline uint64_t _hash(int64_t k):
    cdef uint64_t h = <uint64_t>k
    h ^= h >> 31
    h *= 0x9E3779B97F4A7C15ULL
    h ^= h >> 29
    return h


cdef int table_grow(Table *t) except -1:
    cdef int64_t *ok = t.keys
    cdef lnd_i128 *ov = t.vals
    cdef Py_ssize_t ocap = t.cap, i, j, mask
    cdef Py_ssize_t cap = ocap * 2
    t.keys = <int64_t *>malloc(cap * sizeof(int64_t))
    t.vals = <lnd_i128 *>malloc(cap * sizeof(lnd_i128))
    if t.keys == NULL or t.vals == NULL:
        free(t.keys)
        free(t.vals)
        t.keys, t.vals = ok, ov
        raise MemoryError()
    for i in range(cap):
        t.keys[i] = -1
    t.cap = cap
    mask = cap - 1
    for i in range(ocap):
        if ok[i] >= 0:
            j = _hash(ok[i]) & mask
            while t.keys[j] >= 0:
                j = (j + 1) & mask
            t.keys[j] = ok[i]
            t.vals[j] = ov[i]
    free(ok)
    free(ov)
    return 0


cdef inline int table_add(Table *t, int64_t k, lnd_i128 v) except -1:
    cdef Py_ssize_t mask = t.cap - 1
    cdef Py_ssize_t j = _hash(k) & mask
    while True:
        if t.keys[j] == k:
            t.vals[j] += v
            return 0
        if t.keys[j] < 0:
            break
        j = (j + 1) & mask
    t.keys[j] = k
    t.vals[j] = v
    t.used += 1
    if 2 * t.used > t.cap:
        table_grow(t)
    return 0


cdef inline int table_add_circle(Table *t, int64_t k, lnd_i128 v, bint circle) except -1:
    # inputs are reduced, so a product has w1-exponent at most 2
    if circle and ((k >> (3 * SHIFT)) & MASK) >= 2:
        table_add(t, k - 2 * W1, v)
        table_add(t, k - 2 * W1 + 2 * W2, -v)
    else:
        table_add(t, k, v)
    return 0


cdef dict table_to_dict(Table *t):
    cdef dict out = {}
    cdef Py_ssize_t i
    for i in range(t.cap):
        if t.keys[i] >= 0 and t.vals[i] != 0:
            out[t.keys[i]] = lnd_i128_to_py(t.vals[i])
    return out


cdef bint _small_terms(dict d, bint circle):
    """True when all coefficients are small ints (and keys are circle-reduced)."""
    for k, c in d.items():
        if type(c) is not int or not (-SMALL < c < SMALL):
            return False
        if circle and ((<int64_t>k >> (3 * SHIFT)) & MASK) >= 2:
            return False
    return True


cdef int _load(dict d, int64_t **keys, int64_t **vals, Py_ssize_t *n) except -1:
    cdef Py_ssize_t m = len(d), i = 0
    keys[0] = <int64_t *>malloc((m + 1) * sizeof(int64_t))
    vals[0] = <int64_t *>malloc((m + 1) * sizeof(int64_t))
    if keys[0] == NULL or vals[0] == NULL:
        free(keys[0])
        free(vals[0])
        raise MemoryError()
    for k, c in d.items():
        keys[0][i] = k
        vals[0][i] = c
        i += 1
    n[0] = m
    return 0


def clean(d):
    out = {}
    for k, c in d.items():
        if c:
            if type(c) is Fraction and c.denominator == 1:
                c = c.numerator
            out[k] = c
    return out


def circle_reduce(d):
    todo = [k for k in d if (k >> (3 * SHIFT)) & MASK >= 2]
    while todo:
        nxt = []
        for k in todo:
            c = d.pop(k, 0)
            if not c:
                continue
            k1 = k - 2 * W1
            k2 = k1 + 2 * W2
            d[k1] = d.get(k1, 0) + c
            d[k2] = d.get(k2, 0) - c
            if (k1 >> (3 * SHIFT)) & MASK >= 2:
                nxt.append(k1)
                nxt.append(k2)
        todo = nxt
    return d


cdef dict _mul_generic(dict a, dict b, bint circle):
    cdef dict out = {}
    cdef int64_t ka, kb, k
    cdef list bitems = list(b.items())
    for ka_o, ca in a.items():
        ka = ka_o
        for kb_o, cb in bitems:
            kb = kb_o
            k = ka + kb
            out[k] = out.get(k, 0) + ca * cb
    if circle:
        circle_reduce(out)
    return clean(out)


def mul(dict a, dict b, bint circle):
    if len(a) > len(b):
        a, b = b, a
    if not a:
        return {}
    if not (_small_terms(a, circle) and _small_terms(b, circle)):
        return _mul_generic(a, b, circle)
    cdef int64_t *ak = NULL
    cdef int64_t *av = NULL
    cdef int64_t *bk = NULL
    cdef int64_t *bv = NULL
    cdef Py_ssize_t na, nb, i, j
    cdef Table t
    t.keys = NULL
    t.vals = NULL
    try:
        _load(a, &ak, &av, &na)
        _load(b, &bk, &bv, &nb)
        table_init(&t, na + nb)
        for i in range(na):
            for j in range(nb):
                table_add_circle(&t, ak[i] + bk[j], <lnd_i128>av[i] * bv[j], circle)
        return table_to_dict(&t)
    finally:
        free(ak)
        free(av)
        free(bk)
        free(bv)
        table_free(&t)


def partial(dict a, int slot):
    cdef int shift = SHIFT * slot
    cdef int64_t unit = (<int64_t>1) << shift
    cdef int64_t k
    cdef long e
    cdef dict out = {}
    for ko, c in a.items():
        k = ko
        e = (k >> shift) & MASK
        if e:
            out[k - unit] = c * e
    return out


cdef dict _derive_generic(dict a, list images, bint circle):
    cdef dict out = {}
    cdef int64_t k, base, kk, unit
    cdef int shift
    cdef long e
    slots = [(SHIFT * i, (<int64_t>1) << (SHIFT * i), list(img.items())) for i, img in enumerate(images) if img]
    for ko, c in a.items():
        k = ko
        for shift_o, unit_o, img in slots:
            shift = shift_o
            unit = unit_o
            e = (k >> shift) & MASK
            if e:
                base = k - unit
                cc = c * e
                for k2, c2 in img:
                    kk = base + <int64_t>k2
                    out[kk] = out.get(kk, 0) + cc * c2
    if circle:
        circle_reduce(out)
    return clean(out)


def derive(dict a, images, bint circle):
    """``sum_i d(a)/d(x_i) * images[i]``."""
    images = list(images)
    if not a:
        return {}
    cdef bint small = _small_terms(a, circle)
    if small:
        for img in images:
            if not _small_terms(img, circle):
                small = False
                break
    if not small:
        return _derive_generic(a, images, circle)
    cdef int64_t *ak = NULL
    cdef int64_t *av = NULL
    cdef int64_t *ik[3]
    cdef int64_t *iv[3]
    cdef Py_ssize_t ni[3]
    cdef Py_ssize_t na, i, j, s, nimg = len(images)
    cdef int64_t k, base, unit
    cdef long e
    cdef lnd_i128 cc
    cdef Table t
    if nimg > 3:
        return _derive_generic(a, images, circle)
    for s in range(3):
        ik[s] = NULL
        iv[s] = NULL
        ni[s] = 0
    t.keys = NULL
    t.vals = NULL
    try:
        _load(a, &ak, &av, &na)
        for s in range(nimg):
            _load(images[s], &ik[s], &iv[s], &ni[s])
        table_init(&t, na * 4)
        for i in range(na):
            k = ak[i]
            for s in range(nimg):
                e = (k >> (SHIFT * s)) & MASK
                if e == 0 or ni[s] == 0:
                    continue
                unit = (<int64_t>1) << (SHIFT * s)
                base = k - unit
                cc = <lnd_i128>av[i] * e
                for j in range(ni[s]):
                    table_add_circle(&t, base + ik[s][j], cc * iv[s][j], circle)
        return table_to_dict(&t)
    finally:
        free(ak)
        free(av)
        for s in range(3):
            free(ik[s])
            free(iv[s])
        table_free(&t)
