# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_kernel_py`` (same signatures).

Monomial keys stay Python ints (they exceed 64 bits for six variables);
finite-field coefficients are typed C longs.
"""

from ._kernel_py import field_context


cdef inline long _pmod(long a, long m):
    a = a % m
    return a + m if a < 0 else a


cdef void _sub_p(dict f, dict g, object delta, long c, long p):
    cdef long v, b
    for k, bo in g.items():
        kk = k + delta
        b = bo
        v = _pmod(<long>f.get(kk, 0) - c * b, p)
        if v:
            f[kk] = v
        else:
            del f[kk]


cdef void _sub_z(dict f, dict g, object delta, long c, long q1, long half, list zech):
    cdef long nc = (c - 1 + half) % q1 + 1
    cdef long t, a, z, b
    for k, bo in g.items():
        kk = k + delta
        b = bo
        t = (nc + b - 2) % q1 + 1
        ao = f.get(kk)
        if ao is None:
            f[kk] = t
        else:
            a = ao
            z = zech[_pmod(t - a, q1)]
            if z:
                f[kk] = (a + z - 2) % q1 + 1
            else:
                del f[kk]


cdef void _sub_q(dict f, dict g, object delta, object c):
    for k, b in g.items():
        kk = k + delta
        v = f.get(kk, 0) - c * b
        if v:
            f[kk] = v
        else:
            del f[kk]


def sub_mul_shift(dict f, dict g, delta, c, tuple ctx):
    cdef int kind = ctx[0]
    if kind == 1:
        _sub_p(f, g, delta, c, ctx[1])
    elif kind == 2:
        _sub_z(f, g, delta, c, ctx[2], ctx[3], ctx[4])
    else:
        _sub_q(f, g, delta, c)
    return f


def mul(dict a, dict b, C, tuple ctx):
    if len(a) > len(b):
        a, b = b, a
    cdef int kind = ctx[0]
    cdef dict out = {}
    cdef long p, q1, ca, cb, t, s, z
    cdef list zech
    if kind == 1:
        p = ctx[1]
        for ka, cao in a.items():
            d = ka - C
            ca = cao
            for kb, cbo in b.items():
                kk = kb + d
                cb = cbo
                out[kk] = (<long>out.get(kk, 0) + ca * cb) % p
    elif kind == 2:
        q1 = ctx[2]
        zech = ctx[4]
        for ka, cao in a.items():
            d = ka - C
            ca = cao
            for kb, cbo in b.items():
                kk = kb + d
                cb = cbo
                t = (ca + cb - 2) % q1 + 1
                s = out.get(kk, 0)
                if not s:
                    out[kk] = t
                else:
                    z = zech[_pmod(t - s, q1)]
                    out[kk] = (s + z - 2) % q1 + 1 if z else 0
    else:
        for ka, cao in a.items():
            d = ka - C
            for kb, cbo in b.items():
                kk = kb + d
                out[kk] = out.get(kk, 0) + cao * cbo
    return {k: v for k, v in out.items() if v}


def reduce(dict f, list lms, list polys, bint neg, H_all, H_var, tuple ctx, bint full=True):
    cdef int kind = ctx[0]
    cdef dict rem = {}
    cdef Py_ssize_t nb = len(lms), i
    cdef long p = 0, q1 = 0, half = 0
    cdef list zech = None
    if kind == 1:
        p = ctx[1]
    elif kind == 2:
        q1 = ctx[2]
        half = ctx[3]
        zech = ctx[4]
    while f:
        lm = max(f)
        i = 0
        if neg:
            while i < nb:
                if ((lms[i] | H_all) - lm) & H_var == H_var:
                    break
                i += 1
        else:
            lmh = lm | H_all
            while i < nb:
                if (lmh - lms[i]) & H_var == H_var:
                    break
                i += 1
        if i == nb:
            if not full:
                rem.update(f)
                return rem
            rem[lm] = f.pop(lm)
            continue
        c = f[lm]
        delta = lm - lms[i]
        if kind == 1:
            _sub_p(f, polys[i], delta, c, p)
        elif kind == 2:
            _sub_z(f, polys[i], delta, c, q1, half, zech)
        else:
            _sub_q(f, polys[i], delta, c)
    return rem
