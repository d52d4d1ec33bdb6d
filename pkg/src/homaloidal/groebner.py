"""Buchberger Gröbner bases and the ideal operations built on them.

Pairs are chosen by the sugar strategy and pruned with the Gebauer-Möller
update (Buchberger's coprime and chain criteria).  A *module mode* treats a
set of tag variables as module components: every element stays linear in
the tags and only pairs sharing a leading tag are formed, which turns the
scalar engine into a position-over-term module Buchberger.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field as dc_field

from . import kernel
from .errors import NotZeroDimensional
from .poly import DEGREVLEX, MonomialOrder, Poly, Ring

log = logging.getLogger(__name__)

__all__ = [
    "Ideal",
    "GroebnerBasis",
    "SchemeMeasure",
    "groebner",
    "normal_form",
    "eliminate",
    "intersect",
    "ideal_quotient",
    "saturate",
    "saturate_element",
    "krull_dimension",
    "projective_dimension",
    "degree_zero_dim",
    "linear_section",
    "standard_monomial_count",
]


# -- core Buchberger on packed dicts ------------------------------------------------

def _monic(d: dict, field) -> dict:
    lc = d[max(d)]
    if lc == 1:
        return d
    inv = field.inv(lc)
    return {k: field.mul(v, inv) for k, v in d.items()}


def buchberger(polys, ring: Ring, tags=None, stats=None) -> list[dict]:
    """Reduced Gröbner basis (as monic packed dicts, ascending leading keys).

    ``tags`` is an optional collection of variable indices acting as module
    components; inputs must then be linear in them.
    """
    field = ring.field
    ctx = ring.ctx
    neg, H_all, H_var = ring.neg, ring.H_all, ring.H_var
    divides = ring.divides
    kdeg = ring.key_degree
    tags = tuple(tags or ())

    def tag_of(key):
        if not tags:
            return None
        e = ring.unpack(key)
        for t in tags:
            if e[t]:
                return t
        return -1

    P: list[dict] = []  # every polynomial ever added
    L: list[int] = []  # leading keys
    S: list[int] = []  # sugar degrees
    T: list = []  # leading tags
    G: list[int] = []  # indices of the current basis
    B: list[tuple] = []  # pairs (sugar, lcm, i, j)

    def active():
        return [L[i] for i in G], [P[i] for i in G]

    def update(h):
        nonlocal G, B
        lh = L[h]
        C = [(g, ring.lcm(lh, L[g])) for g in G if T[g] == T[h]]
        D = []
        for idx, (g1, l1) in enumerate(C):
            if ring.coprime(lh, L[g1]):
                D.append((g1, l1, True))
                continue
            rest = C[idx + 1 :]
            if any(divides(l2, l1) for _, l2 in rest) or any(divides(l2, l1) for _, l2, _c in D):
                continue
            D.append((g1, l1, False))
        E = [(g, l) for g, l, cop in D if not cop]
        newB = []
        for pair in B:
            _, l12, g1, g2 = pair
            if divides(lh, l12) and ring.lcm(L[g1], lh) != l12 and ring.lcm(lh, L[g2]) != l12:
                continue
            newB.append(pair)
        for g, l in E:
            sug = max(S[g] + kdeg(l) - kdeg(L[g]), S[h] + kdeg(l) - kdeg(lh))
            newB.append((sug, l, g, h))
        B = newB
        G = [g for g in G if not divides(lh, L[g])] + [h]

    def add(d, sugar):
        d = _monic(d, field)
        P.append(d)
        L.append(max(d))
        S.append(sugar)
        T.append(tag_of(L[-1]))
        update(len(P) - 1)

    inputs = []
    for p in polys:
        d = p.terms if isinstance(p, Poly) else p
        if d:
            inputs.append(dict(d))
    inputs.sort(key=max)
    for d in inputs:
        lms, gps = active()
        r = kernel.reduce(dict(d), lms, gps, neg, H_all, H_var, ctx, True)
        if r:
            if ring.key_degree(max(r)) == 0 and not tags:
                return [{ring.one_key: 1}]
            add(r, max(kdeg(k) for k in r))

    n_pairs = n_zero = 0
    while B:
        best = min(range(len(B)), key=lambda i: (B[i][0], B[i][1]))
        sug, l, i, j = B.pop(best)
        n_pairs += 1
        s = {k + (l - L[i]): v for k, v in P[i].items()}
        kernel.sub_mul_shift(s, P[j], l - L[j], 1, ctx)
        if not s:
            n_zero += 1
            continue
        lms, gps = active()
        r = kernel.reduce(s, lms, gps, neg, H_all, H_var, ctx, True)
        if not r:
            n_zero += 1
            continue
        if not tags and kdeg(max(r)) == 0:
            return [{ring.one_key: 1}]
        add(r, sug)

    # interreduce the minimal basis
    basis = sorted(G, key=lambda g: L[g])
    out = []
    for idx, g in enumerate(basis):
        others = [b for b in basis if b != g]
        lms = [L[b] for b in others]
        gps = [P[b] for b in others]
        poly = dict(P[g])
        lm = L[g]
        lc = poly.pop(lm)
        tail = kernel.reduce(poly, lms, gps, neg, H_all, H_var, ctx, True)
        tail[lm] = lc
        out.append(_monic(tail, field))
    # reducing against the unreduced others can leave stale tails; a second
    # pass against the already reduced list makes the result canonical
    final = []
    lms_all = [max(d) for d in out]
    for idx, d in enumerate(out):
        lm = lms_all[idx]
        poly = dict(d)
        lc = poly.pop(lm)
        others_l = lms_all[:idx] + lms_all[idx + 1 :]
        others_p = out[:idx] + out[idx + 1 :]
        tail = kernel.reduce(poly, others_l, others_p, neg, H_all, H_var, ctx, True)
        tail[lm] = lc
        final.append(tail)
    if stats is not None:
        stats.update(pairs=n_pairs, zero_reductions=n_zero, size=len(final))
    log.debug("buchberger: %d pairs, %d zero reductions, basis size %d", n_pairs, n_zero, len(final))
    return final


# -- user-facing types ----------------------------------------------------------------

class Ideal:
    """A finitely generated ideal of a :class:`Ring`."""

    def __init__(self, generators, ring: Ring | None = None):
        gens = [g for g in generators if not g.is_zero()]
        if ring is None:
            if not gens:
                raise ValueError("cannot infer the ring of an empty generator list")
            ring = gens[0].ring
        for g in gens:
            if g.ring != ring:
                raise ValueError("generators from different rings")
        self.ring = ring
        self.generators = tuple(gens)
        self._gb: dict[MonomialOrder, GroebnerBasis] = {}

    def __repr__(self):
        return "Ideal(" + ", ".join(str(g) for g in self.generators) + ")"

    def is_homogeneous(self, blocks=None) -> bool:
        return all(g.is_homogeneous(blocks) for g in self.generators)

    def groebner(self, order: MonomialOrder | None = None) -> "GroebnerBasis":
        return groebner(self, order)

    def is_unit(self) -> bool:
        return self.groebner().is_unit()

    def is_zero(self) -> bool:
        return not self.generators

    def contains(self, f: Poly) -> bool:
        return self.groebner().contains(f)

    def __eq__(self, other):
        if not isinstance(other, Ideal) or other.ring != self.ring:
            return NotImplemented
        return self.groebner() == other.groebner()

    def __hash__(self):
        return hash(self.ring)

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.generators + other.generators, self.ring)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal([a * b for a in self.generators for b in other.generators], self.ring)

    def to_ring(self, target: Ring, mapping=None) -> "Ideal":
        return Ideal([g.to_ring(target, mapping) for g in self.generators], target)


@dataclass
class GroebnerBasis:
    """Reduced, monic Gröbner basis under ``ring.order``."""

    ring: Ring
    elements: list
    source: Ideal | None = None
    stats: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        self._lms = [e.lm() for e in self.elements]
        self._dicts = [e.terms for e in self.elements]

    @property
    def order(self) -> MonomialOrder:
        return self.ring.order

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other):
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return self.ring == other.ring and set(self.elements) == set(other.elements)

    def __hash__(self):
        return hash(frozenset(self.elements))

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].degree() == 0

    def leading_monomials(self) -> list[tuple[int, ...]]:
        return [self.ring.unpack(k) for k in self._lms]

    def reduce(self, f: Poly, full: bool = True) -> Poly:
        if f.ring != self.ring:
            f = f.to_ring(self.ring)
        r = self.ring
        return Poly(r, kernel.reduce(dict(f.terms), self._lms, self._dicts, r.neg, r.H_all, r.H_var, r.ctx, full))

    def contains(self, f: Poly) -> bool:
        return self.reduce(f).is_zero()

    def ideal(self) -> Ideal:
        return Ideal(self.elements, self.ring)

    def s_polynomials_reduce_to_zero(self) -> bool:
        """Buchberger's criterion, checked on every pair."""
        ring = self.ring
        for a, b in itertools.combinations(self.elements, 2):
            la, lb = a.lm(), b.lm()
            l = ring.lcm(la, lb)
            s = {k + (l - la): v for k, v in a.terms.items()}
            kernel.sub_mul_shift(s, b.terms, l - lb, 1, ring.ctx)
            if not self.reduce(Poly(ring, s)).is_zero():
                return False
        return True


def _as_ideal(obj, ring=None) -> Ideal:
    if isinstance(obj, Ideal):
        return obj
    return Ideal(list(obj), ring)


def groebner(ideal, order: MonomialOrder | None = None) -> GroebnerBasis:
    """Reduced Gröbner basis of ``ideal`` (an :class:`Ideal` or polynomial list)."""
    ideal = _as_ideal(ideal)
    order = order or ideal.ring.order
    cached = ideal._gb.get(order)
    if cached is not None:
        return cached
    ring = ideal.ring if order == ideal.ring.order else ideal.ring.with_order(order)
    gens = ideal.generators if ring is ideal.ring else [g.to_ring(ring) for g in ideal.generators]
    stats: dict = {}
    dicts = buchberger(gens, ring, stats=stats) if gens else []
    gb = GroebnerBasis(ring, sorted((Poly(ring, d) for d in dicts), key=Poly.lm), ideal, stats)
    ideal._gb[order] = gb
    return gb


def normal_form(f: Poly, basis) -> Poly:
    if isinstance(basis, Ideal):
        basis = basis.groebner()
    return basis.reduce(f)


# -- elimination, intersection, quotients -----------------------------------------------

def eliminate(ideal: Ideal, front_variables) -> Ideal:
    """Generators of ``ideal`` intersected with the subring omitting ``front_variables``."""
    ring = ideal.ring
    front = [ring.index[v] if isinstance(v, str) else v for v in front_variables]
    if not front:
        return ideal
    rest = [i for i in range(ring.n) if i not in front]
    names = [ring.names[i] for i in front + rest]
    elim_ring = Ring(ring.field, names, MonomialOrder("block", len(front)))
    gb = groebner(ideal.to_ring(elim_ring))
    kept = [g for g in gb.elements if not (g.variables() & set(range(len(front))))]
    return Ideal([g.to_ring(ring) for g in kept], ring)


def _aux_ring(ring: Ring, name: str = "_t") -> Ring:
    while name in ring.index:
        name = "_" + name
    return Ring(ring.field, (name,) + ring.names, MonomialOrder("block", 1))


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """``I ∩ J`` via ``t*I + (1-t)*J`` and elimination of ``t``."""
    ring = I.ring
    if not I.generators or not J.generators:
        return Ideal([], ring)
    R = _aux_ring(ring)
    t = R.gen(0)
    one_minus_t = R.one() - t
    gens = [t * g.to_ring(R) for g in I.generators] + [one_minus_t * g.to_ring(R) for g in J.generators]
    gb = groebner(Ideal(gens, R))
    kept = [g for g in gb.elements if 0 not in g.variables()]
    return Ideal([g.to_ring(ring) for g in kept], ring)


def ideal_quotient(I: Ideal, f: Poly) -> Ideal:
    """``(I : f)`` as ``(I ∩ (f)) / f``."""
    if f.is_zero():
        raise ValueError("quotient by the zero polynomial")
    K = intersect(I, Ideal([f], I.ring))
    return Ideal([g.exact_div(f) for g in K.generators], I.ring)


def _gb_key(ideal: Ideal):
    return frozenset(groebner(ideal).elements)


def saturate_element(I: Ideal, g: Poly, method: str = "colon") -> Ideal:
    """``(I : g^∞)`` by iterated colon ideals or by Rabinowitsch's trick."""
    ring = I.ring
    if g.is_zero():
        raise ValueError("saturation by zero")
    if method == "rabinowitsch":
        R = _aux_ring(ring)
        t = R.gen(0)
        gens = [h.to_ring(R) for h in I.generators] + [t * g.to_ring(R) - R.one()]
        gb = groebner(Ideal(gens, R))
        kept = [h for h in gb.elements if 0 not in h.variables()]
        return Ideal([h.to_ring(ring) for h in kept], ring)
    if method != "colon":
        raise ValueError(f"unknown saturation method {method!r}")
    current = I
    key = _gb_key(current)
    while True:
        nxt = ideal_quotient(current, g)
        nkey = _gb_key(nxt)
        if nkey == key:
            return Ideal(groebner(nxt).elements, ring)
        current, key = nxt, nkey


def saturate(I: Ideal, J, method: str = "colon") -> Ideal:
    """``(I : J^∞) = ⋂_g (I : g^∞)`` over the generators ``g`` of ``J``."""
    J = J if isinstance(J, Ideal) else Ideal(list(J), I.ring)
    gens = [g for g in J.generators if not g.is_zero()]
    if not gens:
        raise ValueError("saturation by the zero ideal")
    if not I.generators:
        return I
    result = None
    for g in gens:
        part = saturate_element(I, g, method)
        if part.is_unit():
            continue
        result = part if result is None else intersect(result, part)
    if result is None:
        return Ideal([I.ring.one()], I.ring)
    return Ideal(groebner(result).elements, I.ring)


# -- dimension and degree --------------------------------------------------------------

def _independent_dimension(lead_exps, n) -> int:
    best = -1
    supports = [frozenset(i for i, x in enumerate(e) if x) for e in lead_exps]
    if any(not s for s in supports):
        return -1
    for size in range(n, -1, -1):
        for subset in itertools.combinations(range(n), size):
            sub = set(subset)
            if all(not s <= sub for s in supports):
                return size
    return best


def krull_dimension(I: Ideal, order: MonomialOrder | None = None) -> int:
    """Affine Krull dimension of ``V(I)`` from leading monomials; ``-1`` for the unit ideal."""
    ring = I.ring
    if not I.generators:
        return ring.n
    gb = groebner(I, order)
    return _independent_dimension(gb.leading_monomials(), ring.n)


def projective_dimension(I: Ideal) -> int:
    """Dimension of the projective scheme of a homogeneous ideal (``-1`` if empty)."""
    d = krull_dimension(I)
    return max(d - 1, -1)


@dataclass
class SchemeMeasure:
    krull_dimension: int
    degree: int | None = None
    mode: str = ""
    certificate: dict = dc_field(default_factory=dict)


def standard_monomial_count(gb: GroebnerBasis) -> int | None:
    """Dimension of ``R / I`` for a zero-dimensional affine ideal, else ``None``."""
    ring = gb.ring
    n = ring.n
    lead = gb.leading_monomials()
    if any(sum(e) == 0 for e in lead):
        return 0
    bounds = []
    for i in range(n):
        pure = [e[i] for e in lead if e[i] and sum(e) == e[i]]
        if not pure:
            return None
        bounds.append(min(pure))
    count = 0
    lead_set = lead

    def standard(e):
        return not any(all(a >= b for a, b in zip(e, l)) for l in lead_set)

    def walk(i, e):
        nonlocal count
        if i == n:
            count += 1
            return
        for x in range(bounds[i]):
            e[i] = x
            if standard(e):
                walk(i + 1, e)
            else:
                break
        e[i] = 0

    walk(0, [0] * n)
    return count


def linear_section(ideal: Ideal, forms, keep_names=None):
    """Impose the linear equations ``forms`` by substitution.

    Each form is solved for one of its variables; the result lives in the ring
    of the remaining variables and has an isomorphic quotient ring.  Returns
    ``(ideal', substitution images)``.
    """
    ring, field = ideal.ring, ideal.ring.field
    # Gaussian elimination on the coefficient matrix (affine forms allowed)
    rows = []
    for f in forms:
        row = [0] * (ring.n + 1)
        for e, c in f.items():
            s = sum(e)
            if s > 1:
                raise ValueError("linear_section needs forms of degree <= 1")
            if s == 0:
                row[ring.n] = c
            else:
                row[e.index(1)] = c
        rows.append(row)
    pivots = []
    for row_i in range(len(rows)):
        row = rows[row_i]
        for prev_row, pc in pivots:
            c = row[pc]
            if c:
                row = [field.sub(a, field.mul(c, b)) for a, b in zip(row, prev_row)]
        candidates = [i for i in range(ring.n) if row[i] != 0]
        if not candidates:
            if row[ring.n] != 0:
                return Ideal([Ring(field, ring.names).one()]), None
            continue
        # prefer solving for the last admissible variable
        pc = candidates[-1]
        inv = field.inv(row[pc])
        row = [field.mul(a, inv) for a in row]
        new_pivots = []
        for prev_row, ppc in pivots:
            c = prev_row[pc]
            if c:
                prev_row = [field.sub(a, field.mul(c, b)) for a, b in zip(prev_row, row)]
            new_pivots.append((prev_row, ppc))
        pivots = new_pivots + [(row, pc)]
    solved = {pc: row for row, pc in pivots}
    free = [i for i in range(ring.n) if i not in solved]
    sub_ring = Ring(field, [ring.names[i] for i in free], DEGREVLEX)
    images = []
    for i in range(ring.n):
        if i in solved:
            row = solved[i]
            img = sub_ring.const(field.neg(row[ring.n]))
            for j, fj in enumerate(free):
                if row[fj]:
                    img = img - sub_ring.gen(j).scale(row[fj])
            images.append(img)
        else:
            images.append(sub_ring.gen(free.index(i)))
    gens = [g.substitute(images, sub_ring) for g in ideal.generators]
    return Ideal(gens, sub_ring), images


def _random_chart(ring: Ring, block, rng):
    field = ring.field
    while True:
        coeffs = [field.random_nonzero(rng) for _ in block]
        form = ring.linear_form(coeffs, block)
        if not form.is_zero():
            return form - ring.one()


def _hilbert_value(gb: GroebnerBasis, blocks, degrees) -> int:
    """Number of standard monomials of the given multidegree."""
    ring = gb.ring
    lead = gb.leading_monomials()
    per_block = [ring.monomials_of_degree(d, b) for b, d in zip(blocks, degrees)]
    count = 0
    for combo in itertools.product(*per_block):
        e = [sum(x) for x in zip(*combo)]
        if not any(all(a >= b for a, b in zip(e, l)) for l in lead):
            count += 1
    return count


def degree_zero_dim(I: Ideal, mode: str = "chart", blocks=None, seed: int = 0, retries: int = 4,
                    saturated: bool = False) -> SchemeMeasure:
    """Length of a projectively zero-dimensional (multi)homogeneous scheme.

    ``blocks`` lists the variable indices of each graded factor (default: one
    block).  ``mode="chart"`` dehomogenizes each block by a seeded random
    linear form set to 1 and counts standard monomials; ``mode="hilbert"``
    reads the stabilized Hilbert function of the saturation along the
    diagonal; ``mode="both"`` runs both and insists they agree.
    """
    ring = I.ring
    blocks = [list(b) for b in (blocks or [range(ring.n)])]
    if mode == "both":
        h = degree_zero_dim(I, "hilbert", blocks, seed, retries, saturated)
        c = degree_zero_dim(I, "chart", blocks, seed, retries, saturated)
        if h.degree != c.degree:
            # chart may have met a point at infinity; retry with fresh charts
            for extra in range(1, retries + 1):
                c = degree_zero_dim(I, "chart", blocks, seed + 7919 * extra, retries, saturated)
                if c.degree == h.degree:
                    break
            else:
                raise NotZeroDimensional(f"chart and Hilbert modes disagree: {c.degree} vs {h.degree}")
        return SchemeMeasure(h.krull_dimension, h.degree, "both", {"chart": c.certificate, "hilbert": h.certificate})
    if I.generators and I.is_unit():
        return SchemeMeasure(-1, None, mode)
    if mode == "chart":
        rng = random.Random(f"chart:{seed}")
        big, emb = ring.field.working_extension()
        if big != ring.field:
            # over a small field every chart may miss a point: move up first
            ring = ring.with_field(big)
            I = Ideal([g.to_ring(ring, coeff_map=emb) for g in I.generators], ring)
        results = []
        for attempt in range(retries):
            forms = [_random_chart(ring, b, rng) for b in blocks]
            aff, _ = linear_section(I, forms)
            gb = groebner(aff)
            cnt = standard_monomial_count(gb)
            if cnt is not None:
                results.append(cnt)
                cert = {"attempt": attempt, "chart_forms": [str(f) for f in forms]}
                if cnt == 0:
                    return SchemeMeasure(-1, None, "chart", cert)
                return SchemeMeasure(0, cnt, "chart", cert)
        raise NotZeroDimensional("affine charts are not zero-dimensional")
    if mode != "hilbert":
        raise ValueError(f"unknown degree mode {mode!r}")
    J = I
    if not saturated:
        for b in blocks:
            J = saturate(J, Ideal([ring.gen(i) for i in b], ring))
            if J.is_unit():
                return SchemeMeasure(-1, None, "hilbert")
    gb = groebner(J)
    if gb.is_unit():
        return SchemeMeasure(-1, None, "hilbert")
    gdeg = max(g.degree() for g in gb.elements)
    bound = max(2 * sum(g.degree() for g in I.generators), 4 * gdeg, 6)
    values = []
    for k in range(bound + 1):
        values.append(_hilbert_value(gb, blocks, [k] * len(blocks)))
        if len(values) >= 3 and values[-1] == values[-2] == values[-3] and k >= gdeg:
            break
    else:
        raise NotZeroDimensional(f"Hilbert function did not stabilize by degree {bound}: {values[-4:]}")
    if values[-1] == 0:
        return SchemeMeasure(-1, None, "hilbert")
    return SchemeMeasure(0, values[-1], "hilbert", {"hilbert_function": values})
