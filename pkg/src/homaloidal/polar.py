"""Polar maps: fixed components, topological degree, graph sections, verdicts.

Genericity is Monte Carlo.  Coefficients of generic combinations and linear
sections are drawn from a working field of size at least 2^16 (a finite
extension of the input field in positive characteristic, integers in
[-2^15, 2^15] over Q), one seeded RNG per trial.
"""

from __future__ import annotations

import logging
import random
from collections import Counter
from dataclasses import dataclass, field as dc_field

from .errors import (
    Inconclusive,
    InconsistencyError,
    NotDeterminantal,
    NotZeroDimensional,
    UndefinedMap,
)
from .groebner import Ideal, degree_zero_dim, groebner, krull_dimension, linear_section, saturate
from .poly import Poly, Ring
from .syzygy import PresentationMatrix, fitting_ideal, minimal_presentation, naive_degrees

log = logging.getLogger(__name__)

__all__ = [
    "PolarMap",
    "GenericSection",
    "MultiDegree",
    "GraphDegrees",
    "HomaloidalVerdict",
    "polar_map",
    "fixed_component_free",
    "topological_degree",
    "projective_degrees",
    "graph_multidegree_via_sections",
    "naive_graph_ideal",
    "graph_ideal",
    "is_homaloidal",
    "working_ring",
]

VERDICTS = ("homaloidal", "not-dominant", "fixed-component", "degree-gt-one", "undefined-map")


@dataclass
class PolarMap:
    f: Poly
    partials: tuple

    @property
    def field(self):
        return self.f.ring.field

    @property
    def ring(self) -> Ring:
        return self.f.ring

    @property
    def degree(self) -> int:
        return self.f.degree()

    def base_ideal(self) -> Ideal:
        return Ideal(list(self.partials), self.ring)


def polar_map(f: Poly) -> PolarMap:
    if f.ring.n != 3:
        raise ValueError("plane curves need exactly three variables")
    if f.is_zero() or not f.is_homogeneous():
        raise ValueError("f must be a nonzero homogeneous polynomial")
    if f.degree() < 2:
        raise ValueError("f must have degree at least 2")
    partials = tuple(f.derivative(i) for i in range(3))
    if all(g.is_zero() for g in partials):
        raise UndefinedMap(f"all partial derivatives of {f} vanish")
    return PolarMap(f, partials)


def fixed_component_free(pm: PolarMap) -> bool:
    """No common factor of the partials, read as affine dimension of V(I) <= 1."""
    return krull_dimension(pm.base_ideal()) <= 1


# -- working field -------------------------------------------------------------------

def working_ring(ring: Ring, names=None):
    """``(ring over the working field, coefficient embedding)``."""
    field = ring.field
    if field.kind == "Q":
        return Ring(field, names or ring.names), (lambda c: c)
    big, emb = field.working_extension()
    return Ring(big, names or ring.names), emb


def _to_working(p: Poly, target: Ring, emb) -> Poly:
    return p.to_ring(target, coeff_map=emb)


def _random_vector(field, rng, n):
    while True:
        v = [field.random(rng) for _ in range(n)]
        if any(c != 0 for c in v):
            return v


@dataclass
class GenericSection:
    """Coefficient rows drawn for one trial, kept verbatim for auditing."""

    seed: int
    trial: int
    field: str
    combinations: list = dc_field(default_factory=list)
    x_forms: list = dc_field(default_factory=list)
    y_forms: list = dc_field(default_factory=list)

    def to_json(self, fmt) -> dict:
        out = {"seed": self.seed, "trial": self.trial, "field": self.field}
        if self.combinations:
            out["combinations"] = [[fmt(c) for c in row] for row in self.combinations]
        if self.x_forms or self.y_forms:
            out["xForms"] = [[fmt(c) for c in row] for row in self.x_forms]
            out["yForms"] = [[fmt(c) for c in row] for row in self.y_forms]
        return out


@dataclass
class MultiDegree:
    d0: int
    d1: int
    d2: int
    provenance: dict = dc_field(default_factory=dict)
    trials: int = 1

    def as_tuple(self):
        return (self.d0, self.d1, self.d2)

    def to_json(self) -> dict:
        return {"d0": self.d0, "d1": self.d1, "d2": self.d2}


# -- topological degree ------------------------------------------------------------

def _modal(values, what):
    counts = Counter(values)
    value, freq = counts.most_common(1)[0]
    unanimous = freq == len(values)
    if len(values) > 1 and freq == 1:
        raise Inconclusive(f"{what}: all {len(values)} trials disagree: {values}")
    if not unanimous:
        log.warning("%s: trials not unanimous %s, using modal value %s", what, values, value)
    return value, unanimous


def topological_degree(pm: PolarMap, trials: int = 3, seed: int = 0, method: str = "colon",
                       retries: int = 3, against: str = "base"):
    """Length of the generic fibre, ``deg V(I^g : I^∞)``, as ``(d0, certificate)``.

    ``against="curve"`` saturates by ``f`` instead of the base ideal, which
    only removes base points lying on the curve.  In characteristic ``p | deg f``
    the two can differ because Euler's identity no longer forces base points
    onto the curve.
    """
    if against not in ("base", "curve"):
        raise ValueError(f"unknown saturation target {against!r}")
    W, emb = working_ring(pm.ring)
    gens = [_to_working(g, W, emb) for g in pm.partials]
    I = Ideal(gens, W) if against == "base" else Ideal([_to_working(pm.f, W, emb)], W)
    records = []
    values = []
    for trial in range(trials):
        for attempt in range(retries + 1):
            rng = random.Random(f"topdeg:{seed}:{trial}:{attempt}")
            a = _random_vector(W.field, rng, 3)
            b = _random_vector(W.field, rng, 3)
            h1 = sum((g.scale(c) for g, c in zip(gens, a)), W.zero())
            h2 = sum((g.scale(c) for g, c in zip(gens, b)), W.zero())
            section = GenericSection(seed, trial, W.field.label(), [a, b])
            S = saturate(Ideal([h1, h2], W), I, method)
            rec = {"section": section.to_json(W.field.format), "attempt": attempt}
            if S.is_unit():
                rec["saturationDegree"] = 0
                rec["dominant"] = False
                break
            if krull_dimension(S) != 1:
                rec["degenerate"] = True
                records.append(rec)
                continue
            m = degree_zero_dim(S, "both", seed=seed * 1000 + trial, saturated=True)
            rec["saturationDegree"] = m.degree
            rec["hilbertFunction"] = m.certificate["hilbert"].get("hilbert_function")
            rec["dominant"] = True
            break
        else:
            raise NotZeroDimensional("generic fibre is not zero-dimensional after retries")
        records.append(rec)
        values.append(rec["saturationDegree"])
    d0, unanimous = _modal(values, "topological degree")
    cert = {
        "workingField": W.field.label(),
        "saturation": method,
        "against": against,
        "trials": [r for r in records if "saturationDegree" in r],
        "degenerateSections": sum(1 for r in records if r.get("degenerate")),
        "unanimous": unanimous,
        "status": "ok" if unanimous else "warning",
    }
    return d0, cert


def projective_degrees(pm: PolarMap, trials: int = 3, seed: int = 0, method: str = "colon") -> MultiDegree:
    """``(d0, deg f - 1, 1)``, or ``(0, deg f - 1, 0)`` when the map is not dominant."""
    d0, cert = topological_degree(pm, trials, seed, method)
    return MultiDegree(
        d0,
        pm.degree - 1,
        1 if d0 >= 1 else 0,
        {"d0": "fibre-saturation", "d1": "degree-of-linear-system", "d2": "dominance", "certificate": cert},
        trials,
    )


# -- graph and naive graph in P2 x P2 ----------------------------------------------------

def _product_ring(W: Ring) -> Ring:
    ynames = ["y0", "y1", "y2"]
    while set(ynames) & set(W.names):
        ynames = ["_" + y for y in ynames]
    return Ring(W.field, tuple(W.names) + tuple(ynames))


def naive_graph_ideal(M: PresentationMatrix, P: Ring, emb=None) -> Ideal:
    """Entries of ``(y0 y1 y2) · M`` in the product ring ``P``."""
    ys = [P.gen(3 + i) for i in range(3)]
    gens = []
    for col in M.columns():
        acc = P.zero()
        for y, e in zip(ys, col):
            acc = acc + y * e.to_ring(P, coeff_map=emb)
        gens.append(acc)
    return Ideal(gens, P)


def _fitting_in(M: PresentationMatrix, P: Ring, emb=None) -> Ideal:
    return Ideal([g.to_ring(P, coeff_map=emb) for g in fitting_ideal(M).ideal.generators], P)


def graph_ideal(M: PresentationMatrix, P: Ring, emb=None) -> Ideal:
    """Saturation of the naive graph ideal by the Fitting ideal (in six variables)."""
    return saturate(naive_graph_ideal(M, P, emb), _fitting_in(M, P, emb))


@dataclass
class GraphDegrees:
    graph: MultiDegree
    naive: MultiDegree
    torsion: tuple
    certificate: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "graph": self.graph.to_json(),
            "naive": self.naive.to_json(),
            "torsion": dict(zip(("d0", "d1", "d2"), self.torsion)),
        }


def _section_degree(ideal: Ideal, forms, nx: int, seed: int):
    sect, _ = linear_section(ideal, forms)
    sub = sect.ring
    blocks = [[i for i, v in enumerate(sub.names) if i < nx], [i for i in range(nx, sub.n)]]
    if sect.generators and sect.is_unit():
        return 0
    m = degree_zero_dim(sect, "both", blocks=blocks, seed=seed)
    return m.degree or 0


def graph_multidegree_via_sections(M: PresentationMatrix, trials: int = 3, seed: int = 0,
                                   order: str = "section-first") -> GraphDegrees:
    """Multidegrees of the graph and of the naive graph from random sections.

    For ``i`` in 0, 1, 2 the naive graph ideal is cut by ``i`` random x-linear
    and ``2-i`` random y-linear forms.  The graph degree saturates each section
    by the Fitting ideal (``order="section-first"``) or sections the saturated
    six-variable ideal (``order="saturate-first"``, slower, for cross-checks).
    """
    if M.s != 2:
        raise NotDeterminantal(f"presentation has {M.s} columns, not 2")
    W, emb = working_ring(M.ring)
    P = _product_ring(W)
    naive_I = naive_graph_ideal(M, P, emb)
    fitt = _fitting_in(M, P, emb)
    sat_I = graph_ideal(M, P, emb) if order == "saturate-first" else None
    field = W.field
    per_trial = []
    naive_vals: list[list[int]] = [[], [], []]
    graph_vals: list[list[int]] = [[], [], []]
    for trial in range(trials):
        rng = random.Random(f"sections:{seed}:{trial}")
        row = {"trial": trial, "sections": []}
        for i in range(3):
            xs = [_random_vector(field, rng, 3) for _ in range(i)]
            ys = [_random_vector(field, rng, 3) for _ in range(2 - i)]
            forms = [P.linear_form(c, range(3)) for c in xs] + [P.linear_form(c, range(3, 6)) for c in ys]
            nx = 3 - i
            s = seed * 1000 + trial * 10 + i
            naive = _section_degree(naive_I, forms, nx, s)
            if sat_I is not None:
                graph = _section_degree(sat_I, forms, nx, s)
            else:
                sect, images = linear_section(naive_I, forms)
                fsect = Ideal([g.substitute(images, sect.ring) for g in fitt.generators], sect.ring)
                fsect = Ideal([g for g in fsect.generators if not g.is_zero()], sect.ring)
                sat = saturate(sect, fsect) if fsect.generators else sect
                if sat.is_unit():
                    graph = 0
                else:
                    sub = sat.ring
                    blocks = [list(range(nx)), list(range(nx, sub.n))]
                    graph = degree_zero_dim(sat, "both", blocks=blocks, seed=s).degree or 0
            naive_vals[i].append(naive)
            graph_vals[i].append(graph)
            row["sections"].append({
                "i": i,
                "xForms": [[field.format(c) for c in v] for v in xs],
                "yForms": [[field.format(c) for c in v] for v in ys],
                "naive": naive,
                "graph": graph,
            })
        per_trial.append(row)
    naive = [_modal(v, f"naive degree {i}")[0] for i, v in enumerate(naive_vals)]
    graph = [_modal(v, f"graph degree {i}")[0] for i, v in enumerate(graph_vals)]
    unanimous = all(len(set(v)) == 1 for v in naive_vals + graph_vals)
    torsion = tuple(a - b for a, b in zip(naive, graph))
    cert = {"workingField": field.label(), "order": order, "trials": per_trial, "unanimous": unanimous}
    return GraphDegrees(
        MultiDegree(*graph, {"all": "graph-sections"}, trials),
        MultiDegree(*naive, {"all": "naive-graph-sections"}, trials),
        torsion,
        cert,
    )


# -- verdict -----------------------------------------------------------------------------

@dataclass
class HomaloidalVerdict:
    verdict: str
    multidegree: MultiDegree | None = None
    certificate: dict = dc_field(default_factory=dict)

    @property
    def homaloidal(self) -> bool:
        return self.verdict == "homaloidal"

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "multidegree": self.multidegree.to_json() if self.multidegree else None,
            "certificate": self.certificate,
        }


def is_homaloidal(f: Poly, trials: int = 3, seed: int = 0, cross_check: bool = True) -> HomaloidalVerdict:
    """Full pipeline; a graph-section cross-check runs whenever the base ideal
    is determinantal and must agree with the fibre saturation."""
    try:
        pm = polar_map(f)
    except UndefinedMap as exc:
        return HomaloidalVerdict("undefined-map", None, {"reason": str(exc)})
    if not fixed_component_free(pm):
        return HomaloidalVerdict("fixed-component", None, {"krullDimension": krull_dimension(pm.base_ideal())})
    md = projective_degrees(pm, trials, seed)
    cert = {"topologicalDegree": md.provenance["certificate"]}
    if md.d0 == 0:
        return HomaloidalVerdict("not-dominant", md, cert)
    if cross_check:
        M = minimal_presentation(pm.partials)
        hb = M.hilbert_burch()
        if hb is not None and hb.holds:
            gd = graph_multidegree_via_sections(M, trials, seed)
            cert["graphSections"] = gd.to_json()
            if gd.graph.d0 != md.d0 or gd.graph.d1 != md.d1:
                raise InconsistencyError(
                    f"fibre saturation gives {md.as_tuple()}, graph sections give {gd.graph.as_tuple()}",
                    {"saturation": cert["topologicalDegree"], "sections": gd.certificate},
                )
    verdict = "homaloidal" if md.d0 == 1 else "degree-gt-one"
    return HomaloidalVerdict(verdict, md, cert)
