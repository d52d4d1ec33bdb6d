"""Pure-Python arithmetic kernels on packed sparse polynomials.

A polynomial here is a ``dict`` mapping packed monomial keys to field codes
(see :mod:`homaloidal.poly`).  A field context ``ctx`` is the tuple
``(kind, p, q1, half, zech)`` produced by :func:`field_context`:

* kind 0: Q, codes are ints/Fractions;
* kind 1: GF(p), codes are ints mod p;
* kind 2: GF(p^e) with Zech-logarithm codes.

Monomial keys are affine in the exponent vector, so multiplying every term
of ``g`` by a monomial is ``key + delta`` for a fixed ``delta``.

:mod:`homaloidal._kernel` (Cython) implements the same functions; the
package picks whichever imports.
"""

from __future__ import annotations


def field_context(field):
    kind = {"Q": 0, "P": 1, "Z": 2}[field.kind]
    if kind == 2:
        zech = field._tables()[2]
        return (2, field.characteristic, field._q1, field._half, zech)
    return (kind, field.characteristic, 0, 0, None)


def sub_mul_shift(f, g, delta, c, ctx):
    """In place: ``f -= c * x^delta * g``."""
    kind = ctx[0]
    get = f.get
    if kind == 1:
        p = ctx[1]
        for k, b in g.items():
            kk = k + delta
            v = (get(kk, 0) - c * b) % p
            if v:
                f[kk] = v
            else:
                del f[kk]
    elif kind == 2:
        q1, half, zech = ctx[2], ctx[3], ctx[4]
        nc = (c - 1 + half) % q1 + 1
        for k, b in g.items():
            kk = k + delta
            t = (nc + b - 2) % q1 + 1
            a = get(kk, 0)
            if not a:
                f[kk] = t
            else:
                z = zech[(t - a) % q1]
                if z:
                    f[kk] = (a + z - 2) % q1 + 1
                else:
                    del f[kk]
    else:
        for k, b in g.items():
            kk = k + delta
            v = get(kk, 0) - c * b
            if v:
                f[kk] = v
            else:
                del f[kk]
    return f


def mul(a, b, C, ctx):
    """Product of two packed polynomials; ``C`` is the ring's packing constant."""
    if len(a) > len(b):
        a, b = b, a
    kind = ctx[0]
    out = {}
    get = out.get
    if kind == 1:
        p = ctx[1]
        for ka, ca in a.items():
            d = ka - C
            for kb, cb in b.items():
                kk = kb + d
                out[kk] = (get(kk, 0) + ca * cb) % p
    elif kind == 2:
        q1, zech = ctx[2], ctx[4]
        for ka, ca in a.items():
            d = ka - C
            for kb, cb in b.items():
                kk = kb + d
                t = (ca + cb - 2) % q1 + 1
                s = get(kk, 0)
                if not s:
                    out[kk] = t
                else:
                    z = zech[(t - s) % q1]
                    out[kk] = (s + z - 2) % q1 + 1 if z else 0
    else:
        for ka, ca in a.items():
            d = ka - C
            for kb, cb in b.items():
                kk = kb + d
                out[kk] = get(kk, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


def reduce(f, lms, polys, neg, H_all, H_var, ctx, full=True):
    """Normal form of ``f`` (consumed) against monic ``polys`` with leading keys ``lms``.

    ``neg`` selects the divisibility test for complement-packed orders.
    With ``full=False`` only the leading term is reduced.
    """
    kind = ctx[0]
    rem = {}
    nb = len(lms)
    if kind == 1:
        p = ctx[1]
    elif kind == 2:
        q1, half, zech = ctx[2], ctx[3], ctx[4]
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
        g = polys[i]
        get = f.get
        if kind == 1:
            for k, b in g.items():
                kk = k + delta
                v = (get(kk, 0) - c * b) % p
                if v:
                    f[kk] = v
                else:
                    del f[kk]
        elif kind == 2:
            nc = (c - 1 + half) % q1 + 1
            for k, b in g.items():
                kk = k + delta
                t = (nc + b - 2) % q1 + 1
                a = get(kk, 0)
                if not a:
                    f[kk] = t
                else:
                    z = zech[(t - a) % q1]
                    if z:
                        f[kk] = (a + z - 2) % q1 + 1
                    else:
                        del f[kk]
        else:
            for k, b in g.items():
                kk = k + delta
                v = get(kk, 0) - c * b
                if v:
                    f[kk] = v
                else:
                    del f[kk]
    return rem
