"""Independent reference computations by dense linear algebra.

Nothing here uses the package's polynomial arithmetic or Gröbner engine.
Polynomials come from sympy; ranks and echelon forms are computed with
numpy (mod p) or sympy's exact DomainMatrix (over Q).
"""

from __future__ import annotations

import itertools
import random

import numpy as np
import sympy as sp
from sympy.polys.matrices import DomainMatrix

X = sp.symbols("x0 x1 x2")


def monomials(deg: int, n: int = 3):
    out = []
    for combo in itertools.combinations_with_replacement(range(n), deg):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def degrevlex_key(e):
    """Larger key means larger monomial in degrevlex with x0 > x1 > x2."""
    return (sum(e), tuple(-x for x in reversed(e)))


def poly_dict(expr, modulus: int | None = None) -> dict:
    p = sp.Poly(sp.expand(expr), *X)
    out = {}
    for e, c in p.terms():
        c = sp.Rational(c)
        if modulus:
            c = int(c.p * pow(int(c.q), -1, modulus)) % modulus
            if c == 0:
                continue
        out[tuple(e)] = c
    return out


def _mul_mono(poly: dict, m) -> dict:
    return {tuple(a + b for a, b in zip(e, m)): c for e, c in poly.items()}


def rref_mod_p(mat: np.ndarray, p: int):
    """Reduced row echelon form over GF(p) for an int64 matrix."""
    a = mat.copy() % p
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        others = np.nonzero(a[:, c])[0]
        for i in others:
            if i != r:
                a[i] = (a[i] - a[i, c] * a[r]) % p
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a[:r], pivots


def macaulay_groebner_mod_p(gens: list[dict], p: int, max_degree: int) -> dict:
    """Reduced degrevlex Gröbner basis elements of a homogeneous ideal up to
    ``max_degree``, read off row-echelon forms of Macaulay matrices.

    Returns ``{degree: [poly dict, ...]}``.
    """
    result = {}
    lead_so_far = []
    for D in range(max_degree + 1):
        cols = sorted(monomials(D), key=degrevlex_key, reverse=True)
        index = {m: i for i, m in enumerate(cols)}
        rows = []
        for g in gens:
            dg = sum(next(iter(g)))
            if dg > D:
                continue
            for m in monomials(D - dg):
                row = np.zeros(len(cols), dtype=np.int64)
                for e, c in _mul_mono(g, m).items():
                    row[index[e]] = c
                rows.append(row)
        if not rows:
            continue
        red, pivots = rref_mod_p(np.array(rows), p)
        new = []
        for row, pc in zip(red, pivots):
            lm = cols[pc]
            if any(all(a >= b for a, b in zip(lm, l)) for l in lead_so_far):
                continue
            new.append({cols[i]: int(row[i]) for i in np.nonzero(row)[0]})
        lead_so_far += [max(g, key=degrevlex_key) for g in new]
        if new:
            result[D] = new
    return result


def _rank_q(rows: list[list]) -> int:
    if not rows:
        return 0
    return DomainMatrix.from_list_sympy(len(rows), len(rows[0]), rows).convert_to(sp.QQ).rank()


def _rank_p(rows: list[list], p: int) -> int:
    if not rows:
        return 0
    return len(rref_mod_p(np.array(rows, dtype=np.int64), p)[1])


def saturation_length(f_expr, seed: int = 12345, degrees=(6, 7, 8), max_power: int = 8,
                      modulus: int | None = None, coeff_bound: int = 50):
    """Length of ``V(I^g : I^∞)`` for the partials of ``f`` by linear algebra.

    ``I^g`` is spanned by two random combinations of the partials and the
    saturation is replaced by ``(I^g : h^k)`` for a third random combination
    ``h``.  In degree ``D`` the quotient dimension equals
    ``rank[V; P] - rank V`` where ``V`` spans ``(I^g)_{D+k*deg h}`` and ``P``
    spans ``h^k * R_D``.  ``k`` grows until the value repeats, then the value
    must be constant across ``degrees``.  Returns ``(length, log)``.

    Random combinations are only generic over Q or a large prime field;
    tiny fields make this route unreliable, so callers stick to those.
    """
    rng = random.Random(seed)
    parts = [sp.diff(f_expr, x) for x in X]

    def combo():
        return sum(rng.randint(-coeff_bound, coeff_bound) * g for g in parts)

    q1, q2, h = combo(), combo(), combo()
    dq = sp.Poly(parts[0], *X).total_degree() if parts[0] != 0 else None
    gens = [poly_dict(q1, modulus), poly_dict(q2, modulus)]
    log = {"seed": seed, "combinations": [str(q1), str(q2)], "h": str(h), "table": []}
    rank = (lambda rows: _rank_p(rows, modulus)) if modulus else _rank_q
    values = {}
    for D in degrees:
        prev = None
        for k in range(1, max_power + 1):
            E = D + k * dq
            cols = sorted(monomials(E), key=degrevlex_key, reverse=True)
            index = {m: i for i, m in enumerate(cols)}

            def row_of(poly):
                row = [0] * len(cols)
                for e, c in poly.items():
                    row[index[e]] = c
                return row

            V = [row_of(_mul_mono(g, m)) for g in gens for m in monomials(E - dq)]
            hk = poly_dict(sp.expand(h**k), modulus)
            P = [row_of(_mul_mono(hk, m)) for m in monomials(D)]
            rv = rank(V)
            value = rank(V + P) - rv
            log["table"].append({"D": D, "k": k, "rankV": rv, "quotientDim": value})
            if value == prev:
                break
            prev = value
        else:
            raise RuntimeError(f"no stabilization in k for D={D}")
        values[D] = prev
    if len(set(values.values())) != 1:
        raise RuntimeError(f"Hilbert function not constant on {degrees}: {values}")
    length = next(iter(values.values()))
    log["result"] = length
    return length, log


# -- finite projective planes by brute force --------------------------------------

def pg2_points(p: int):
    """Normalized points of PG(2, p) for a prime ``p`` (first nonzero entry 1)."""
    pts = []
    for v in itertools.product(range(p), repeat=3):
        nz = [c for c in v if c]
        if nz and nz[0] == 1:
            pts.append(v)
    return pts


def fold_vector(lines, p: int) -> dict:
    """``{r: t_r}`` by checking every point of the plane against every line."""
    t: dict = {}
    for pt in pg2_points(p):
        r = sum(1 for l in lines if sum(a * b for a, b in zip(l, pt)) % p == 0)
        if r >= 2:
            t[r] = t.get(r, 0) + 1
    return t


def near_pencil_subsets(p: int, d: int) -> int:
    """Number of ``d``-subsets (``d >= 4``) of lines of PG(2, p) forming a
    near-pencil: ``d-1`` lines through one point plus one line missing it."""
    if d < 4:
        raise ValueError("near-pencil counting needs d >= 4")
    lines = pg2_points(p)  # lines are self-dual to points
    count = 0
    for subset in itertools.combinations(lines, d):
        t = fold_vector(subset, p)
        if t.get(d - 1, 0) == 1 and t.get(2, 0) == d - 1 and len(t) == 2:
            count += 1
    return count
