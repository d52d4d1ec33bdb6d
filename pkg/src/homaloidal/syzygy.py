"""Syzygies of three forms, minimal presentations and the data read off them.

Module elements ``a*T + b0*E0 + b1*E1 + b2*E2`` are encoded as polynomials
linear in the tag variables ``T, E0, E1, E2`` and handled by the module mode
of the Buchberger engine under a position-over-term order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from . import kernel
from .errors import NotDeterminantal
from .groebner import Ideal, buchberger, groebner, krull_dimension
from .linalg import nullspace, solve
from .poly import MonomialOrder, Poly, Ring

__all__ = [
    "PresentationMatrix",
    "HilbertBurchCertificate",
    "FittingIdeal",
    "NaiveDegrees",
    "TteCarReport",
    "syzygies",
    "syzygies_linear_algebra",
    "minimal_presentation",
    "fitting_ideal",
    "naive_degrees",
    "tteCar_hypotheses",
    "radical_equals",
]

_TAGS = ("_T", "_E0", "_E1", "_E2")


def _module_ring(ring: Ring, tags) -> Ring:
    return Ring(ring.field, tuple(tags) + ring.names, MonomialOrder("block", len(tags)))


def _to_vector(p: Poly, ring: Ring, ntags: int, offset: int = 0) -> list[Poly]:
    """Split a tag-linear polynomial into its component polynomials."""
    mr = p.ring
    comps: list[dict] = [dict() for _ in range(ntags)]
    for k, v in p.terms.items():
        e = mr.unpack(k)
        j = next(i for i in range(ntags) if e[i])
        comps[j][ring.pack(e[ntags:])] = v
    return [Poly(ring, c) for c in comps[offset:]]


def _from_vector(column, mr: Ring, ntags: int, offset: int = 0) -> Poly:
    acc: dict = {}
    for j, entry in enumerate(column):
        tag = [0] * ntags
        tag[j + offset] = 1
        for k, v in entry.terms.items():
            acc[mr.pack(tag + list(entry.ring.unpack(k)))] = v
    return Poly(mr, acc)


def _column_degree(column) -> int:
    return max(c.degree() for c in column)


def dot(column, gens) -> Poly:
    acc = gens[0].ring.zero()
    for c, g in zip(column, gens):
        acc = acc + c * g
    return acc


def syzygies(g0: Poly, g1: Poly, g2: Poly) -> list[tuple[Poly, Poly, Poly]]:
    """A generating set (a Gröbner basis) of the syzygy module of ``(g0, g1, g2)``.

    Every column is certified by its dot product with the generators.
    """
    gens = (g0, g1, g2)
    ring = g0.ring
    if all(g.is_zero() for g in gens):
        raise ValueError("syzygies of the zero vector are not computed")
    mr = _module_ring(ring, _TAGS)
    inputs = []
    for i, g in enumerate(gens):
        vec = [ring.zero()] * 4
        vec[0] = g
        vec[i + 1] = ring.one()
        inputs.append(_from_vector(vec, mr, 4))
    basis = buchberger(inputs, mr, tags=range(4))
    cols = []
    for d in basis:
        p = Poly(mr, d)
        vec = _to_vector(p, ring, 4)
        if not vec[0].is_zero():
            continue
        col = tuple(vec[1:])
        if not dot(col, gens).is_zero():
            raise AssertionError("syzygy certificate failed")
        cols.append(col)
    return cols


def _membership_basis(columns, ring: Ring):
    mr = _module_ring(ring, _TAGS[1:])
    if not columns:
        return mr, [], []
    dicts = buchberger([_from_vector(c, mr, 3) for c in columns], mr, tags=range(3))
    return mr, [max(d) for d in dicts], dicts


def _in_module(column, basis) -> bool:
    mr, lms, dicts = basis
    if not lms:
        return all(c.is_zero() for c in column)
    p = _from_vector(column, mr, 3)
    r = kernel.reduce(dict(p.terms), lms, dicts, mr.neg, mr.H_all, mr.H_var, mr.ctx, True)
    return not r


def prune_minimal(columns, ring: Ring) -> list[tuple]:
    """Greedy degree-ascending selection of a minimal generating subset."""
    ordered = sorted(
        (c for c in columns if not all(e.is_zero() for e in c)),
        key=lambda c: (_column_degree(c), sum(len(e) for e in c)),
    )
    kept: list[tuple] = []
    basis = _membership_basis([], ring)
    for col in ordered:
        if _in_module(col, basis):
            continue
        kept.append(col)
        basis = _membership_basis(kept, ring)
    return kept


def syzygies_linear_algebra(gens, max_degree: int) -> list[tuple]:
    """Minimal syzygies up to ``max_degree`` from the kernels of the degree-wise
    multiplication maps ``R_a^3 -> R_{a+d}`` (dense linear algebra)."""
    ring = gens[0].ring
    field = ring.field
    found = []
    for a in range(max_degree + 1):
        mons = ring.monomials_of_degree(a)
        # unknowns: coefficient of monomial m in component j
        unknowns = [(j, m) for j in range(3) for m in mons]
        images: dict[int, dict[int, object]] = {}
        for col_idx, (j, m) in enumerate(unknowns):
            prod = gens[j] * ring.monomial(m)
            for k, v in prod.terms.items():
                images.setdefault(k, {})[col_idx] = v
        rows = [[row.get(c, 0) for c in range(len(unknowns))] for row in images.values()]
        for vec in nullspace(rows, field, len(unknowns)):
            col = []
            for j in range(3):
                col.append(ring.from_terms((m, vec[j * len(mons) + i]) for i, m in enumerate(mons)))
            found.append(tuple(col))
    return prune_minimal(found, ring)


@dataclass
class HilbertBurchCertificate:
    """Signed maximal minors compared with the generators.

    Rows are numbered 1, 2, 3 and ``M_j`` is ``(-1)^j`` times the minor that
    leaves out row ``j``; ``holds`` means ``M_j = scalar * g_j`` for all ``j``.
    """

    signed_minors: tuple
    scalar: object
    holds: bool


@dataclass
class PresentationMatrix:
    entries: list  # rows of Poly, 3 x s
    column_degrees: list
    source_generators: tuple
    method: str = "module-groebner"

    @property
    def s(self) -> int:
        return len(self.column_degrees)

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.s)]

    @property
    def ring(self) -> Ring:
        return self.source_generators[0].ring

    def is_syzygy_matrix(self) -> bool:
        return all(dot(c, self.source_generators).is_zero() for c in self.columns())

    def hilbert_burch(self) -> HilbertBurchCertificate | None:
        if self.s != 2:
            return None
        m = self.entries
        field = self.ring.field
        minors = []
        for j in range(3):
            r0, r1 = [r for r in range(3) if r != j]
            delta = m[r0][0] * m[r1][1] - m[r0][1] * m[r1][0]
            minors.append(delta if (j + 1) % 2 == 0 else -delta)
        scalar = None
        for mj, gj in zip(minors, self.source_generators):
            if not gj.is_zero() and not mj.is_zero():
                scalar = field.div(mj.lc(), gj.lc())
                break
        holds = scalar is not None and all(
            mj == gj.scale(scalar) for mj, gj in zip(minors, self.source_generators)
        )
        return HilbertBurchCertificate(tuple(minors), scalar, holds)

    def __str__(self):
        cells = [[str(e) for e in row] for row in self.entries]
        widths = [max(len(cells[i][j]) for i in range(3)) for j in range(self.s)]
        lines = ["[ " + "  ".join(c.rjust(w) for c, w in zip(row, widths)) + " ]" for row in cells]
        return "\n".join(lines)

    def to_json(self) -> dict:
        field = self.ring.field
        hb = self.hilbert_burch()
        out = {
            "rows": [[str(e) for e in row] for row in self.entries],
            "columnDegrees": list(self.column_degrees),
            "method": self.method,
            "syzygyCertificate": self.is_syzygy_matrix(),
        }
        if hb is not None:
            out["hilbertBurch"] = {
                "holds": hb.holds,
                "scalar": field.format(hb.scalar) if hb.scalar is not None else None,
                "signedMinors": [str(m) for m in hb.signed_minors],
            }
        return out


def _primitive(column):
    """Over Q, scale a column to coprime integer entries; elsewhere unchanged."""
    ring = column[0].ring
    if ring.field.kind != "Q":
        return column
    from fractions import Fraction
    from math import gcd, lcm

    coeffs = [Fraction(v) for e in column for v in e.terms.values()]
    if not coeffs:
        return column
    den = lcm(*(c.denominator for c in coeffs))
    num = gcd(*(int(c * den) for c in coeffs))
    lead = next(e for e in column if not e.is_zero()).lc()
    factor = Fraction(den, num) * (1 if lead > 0 else -1)
    return tuple(e.scale(factor) for e in column)


def minimal_presentation(gens, method: str = "module-groebner") -> PresentationMatrix:
    """Minimal presentation matrix of the ideal generated by three forms.

    ``method="linear-algebra"`` uses degree-wise kernels instead of a module
    Gröbner basis; it is the independent route used to cross-check.
    """
    gens = tuple(gens)
    if len(gens) != 3:
        raise ValueError("presentation of exactly three generators expected")
    ring = gens[0].ring
    if method == "module-groebner":
        cols = prune_minimal(syzygies(*gens), ring)
    elif method == "linear-algebra":
        d = max(g.degree() for g in gens)
        cols = syzygies_linear_algebra(gens, 2 * d)
    else:
        raise ValueError(f"unknown presentation method {method!r}")
    cols = [_primitive(c) for c in cols]
    cols.sort(key=lambda c: (_column_degree(c), sum(len(e) for e in c)))
    entries = [[c[i] for c in cols] for i in range(3)]
    return PresentationMatrix(entries, [_column_degree(c) for c in cols], gens, method)


# -- Fitting ideal -----------------------------------------------------------------

COORDINATE_IDEALS = {
    "(x0,x1)": (0, 1),
    "(x1,x2)": (1, 2),
    "(x0,x2)": (0, 2),
    "(x0,x1,x2)": (0, 1, 2),
}


def in_radical(g: Poly, I: Ideal) -> bool:
    """``g ∈ √I`` via ``1 ∈ I + (t*g - 1)``."""
    ring = I.ring
    R = Ring(ring.field, ("_r",) + ring.names, ring.order)
    t = R.gen(0)
    gens = [h.to_ring(R) for h in I.generators] + [t * g.to_ring(R) - R.one()]
    return groebner(Ideal(gens, R)).is_unit()


def radical_equals(I: Ideal, P: Ideal) -> bool:
    """``√I = P`` for a prime ``P``: ``I ⊆ P`` and every generator of ``P`` in ``√I``."""
    gbP = groebner(P)
    return all(gbP.contains(g) for g in I.generators) and all(in_radical(v, I) for v in P.generators)


@dataclass
class FittingIdeal:
    ideal: Ideal
    pattern: dict = dc_field(default_factory=dict)

    def radical(self) -> str | None:
        """Name of the coordinate ideal equal to the radical, if any."""
        for name, info in self.pattern.items():
            if info["radical_equals"]:
                return name
        return None

    def equals(self, name: str) -> bool:
        return self.pattern[name]["equals"]

    def to_json(self) -> dict:
        return {
            "generators": [str(g) for g in self.ideal.generators],
            "radical": self.radical(),
            "pattern": self.pattern,
        }


def fitting_ideal(M: PresentationMatrix) -> FittingIdeal:
    ring = M.ring
    entries = list(dict.fromkeys(e for row in M.entries for e in row if not e.is_zero()))
    F = Ideal(entries, ring)
    pattern = {}
    for name, idx in COORDINATE_IDEALS.items():
        P = Ideal([ring.gen(i) for i in idx], ring)
        contained = all(groebner(P).contains(g) for g in F.generators)
        pattern[name] = {
            "contained": contained,
            "equals": contained and groebner(F) == groebner(P),
            "radical_equals": contained and all(in_radical(v, F) for v in P.generators),
        }
    return FittingIdeal(F, pattern)


# -- naive degrees and the torsion lemma hypotheses ------------------------------

@dataclass(frozen=True)
class NaiveDegrees:
    d0: int
    d1: int
    d2: int

    def as_tuple(self):
        return (self.d0, self.d1, self.d2)


def naive_degrees(M: PresentationMatrix) -> NaiveDegrees:
    """``(ab, a+b, 1)`` from the column degrees ``(a, b)`` (Bézout)."""
    if M.s != 2:
        raise NotDeterminantal(f"presentation has {M.s} columns, not 2")
    a, b = M.column_degrees
    return NaiveDegrees(a * b, a + b, 1)


@dataclass
class TteCarReport:
    pair: tuple
    n: int
    clauses: dict
    adjusted_column: tuple | None = None
    shift: Poly | None = None

    @property
    def passed(self) -> bool:
        return all(self.clauses.values())

    @property
    def failed(self) -> list[str]:
        return [k for k, v in self.clauses.items() if not v]

    def to_json(self) -> dict:
        return {
            "pair": ["x%d" % i for i in self.pair],
            "n": self.n,
            "clauses": self.clauses,
            "passed": self.passed,
            "secondColumn": [str(e) for e in self.adjusted_column] if self.adjusted_column else None,
            "shift": str(self.shift) if self.shift is not None else None,
        }


def _power_basis(ring: Ring, pair, k: int):
    """Monomial generators of ``(u, v)^k``; they already form a Gröbner basis."""
    from .groebner import GroebnerBasis

    u, v = pair
    elems = []
    for i in range(k + 1):
        e = [0] * ring.n
        e[u] += i
        e[v] += k - i
        elems.append(ring.monomial(e))
    return GroebnerBasis(ring, sorted(elems, key=Poly.lm))


def _in_power(p: Poly, ring, pair, k) -> bool:
    if k <= 0 or p.is_zero():
        return True
    return _power_basis(ring, pair, k).reduce(p).is_zero()


def _adjust_second_column(lam, col, pair, n, ring):
    """Find ``q`` of degree ``n-2`` with ``col + q*lam`` inside ``(u, v)^{n-2}``.

    Returns candidate columns (particular solution first, then shifted by
    each nullspace vector) so the caller can also try clause (iii).
    """
    field = ring.field
    u, v = pair
    mons = ring.monomials_of_degree(n - 2)
    bad_rows: dict[tuple, dict[int, object]] = {}
    rhs: dict[tuple, object] = {}
    for j in range(3):
        for i, m in enumerate(mons):
            prod = lam[j] * ring.monomial(m)
            for e, c in prod.items():
                if e[u] + e[v] < n - 2:
                    bad_rows.setdefault((j, e), {})[i] = c
        for e, c in col[j].items():
            if e[u] + e[v] < n - 2:
                rhs[(j, e)] = field.neg(c)
                bad_rows.setdefault((j, e), {})
    keys = list(bad_rows)
    rows = [[bad_rows[k].get(i, 0) for i in range(len(mons))] for k in keys]
    b = [rhs.get(k, 0) for k in keys]
    if not keys:
        sol, kern = [0] * len(mons), [[1 if i == c else 0 for i in range(len(mons))] for c in range(len(mons))]
    else:
        sol, kern = solve(rows, b, field, len(mons))
    if sol is None:
        return []
    out = []
    for extra in [None] + kern:
        vec = sol if extra is None else [field.add(a, c) for a, c in zip(sol, extra)]
        q = ring.from_terms(zip(mons, vec))
        out.append((q, tuple(col[j] + q * lam[j] for j in range(3))))
    return out


def _check_pair(M: PresentationMatrix, n: int, pair) -> TteCarReport:
    ring = M.ring
    u, v = pair
    clauses = {"i": False, "ii": False, "iii": False, "iv": False}
    minors_ideal = Ideal([g for g in M.source_generators if not g.is_zero()], ring)
    hb = M.hilbert_burch()
    if hb is not None and hb.holds:
        minors_ideal = Ideal([m for m in hb.signed_minors if not m.is_zero()], ring)
    clauses["iv"] = bool(minors_ideal.generators) and krull_dimension(minors_ideal) == 1
    best = TteCarReport(pair, n, dict(clauses))
    if M.s != 2:
        return best
    orders = [(0, 1), (1, 0)] if M.column_degrees[0] == M.column_degrees[1] else [(0, 1)]
    for a, b in orders:
        lam, col = M.column(a), M.column(b)
        c = dict(clauses)
        c["i"] = all(e.is_zero() or (e.degree() == 1 and e.is_homogeneous() and _in_power(e, ring, pair, 1)) for e in lam)
        if not c["i"]:
            if sum(c.values()) >= sum(best.clauses.values()):
                best = TteCarReport(pair, n, c)
            continue
        for q, adjusted in _adjust_second_column(lam, col, pair, n, ring) or [(None, col)]:
            c["ii"] = all(
                e.is_zero() or (e.is_homogeneous() and e.degree() == n - 1 and _in_power(e, ring, pair, n - 2))
                for e in adjusted
            )
            c["iii"] = any(not e.is_zero() and not _in_power(e, ring, pair, n - 1) for e in adjusted)
            report = TteCarReport(pair, n, dict(c), adjusted, q)
            if report.passed:
                return report
            if sum(report.clauses.values()) >= sum(best.clauses.values()):
                best = report
    return best


def tteCar_hypotheses(M: PresentationMatrix, n: int | None = None, pair=None) -> TteCarReport:
    """Check the torsion-lemma hypotheses on a 3x2 presentation.

    (i) first column in ``(u,v)_1``; (ii) second column in ``(u,v)^{n-2}`` of
    degree ``n-1`` after replacing it by ``col2 + q*col1`` (``q`` found by
    linear algebra); (iii) some second-column entry outside ``(u,v)^{n-1}``;
    (iv) the minors generate an ideal of height 2.  Without ``pair`` the three
    coordinate pairs are tried in turn.
    """
    if M.s != 2:
        raise NotDeterminantal(f"presentation has {M.s} columns, not 2")
    if n is None:
        n = M.column_degrees[1] + 1
    pairs = [tuple(pair)] if pair is not None else [(0, 1), (1, 2), (0, 2)]
    reports = [_check_pair(M, n, p) for p in pairs]
    for r in reports:
        if r.passed:
            return r
    return max(reports, key=lambda r: sum(r.clauses.values()))
