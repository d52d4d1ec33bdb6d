"""End-to-end analysis of one curve, serialized as a versioned JSON report."""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field

from .errors import HomaloidalError, InconsistencyError, UndefinedMap
from .families import FamilySpec, family_make
from .polar import (
    fixed_component_free,
    graph_multidegree_via_sections,
    polar_map,
    projective_degrees,
)
from .groebner import krull_dimension
from .poly import Poly
from .syzygy import fitting_ideal, minimal_presentation, naive_degrees, tteCar_hypotheses

__all__ = ["SCHEMA", "AnalysisReport", "analyze", "strip_timing"]

SCHEMA = "homaloidal.report.v1"


@dataclass
class AnalysisReport:
    data: dict
    timing: dict = dc_field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return self.data["verdict"]

    def to_json(self, with_timing: bool = True) -> dict:
        out = dict(self.data)
        if with_timing:
            out["timing"] = self.timing
        return out

    def __getitem__(self, key):
        return self.data[key]


def strip_timing(doc: dict) -> dict:
    return {k: v for k, v in doc.items() if k != "timing"}


class _Stages:
    def __init__(self):
        self.timing: dict = {}

    def run(self, name, fn, *args, **kw):
        t = time.perf_counter()
        try:
            return fn(*args, **kw)
        except HomaloidalError as exc:
            exc.stage = name
            raise
        finally:
            self.timing[name] = round(time.perf_counter() - t, 4)


def _trials_json(cert: dict) -> list:
    out = []
    for rec in cert.get("trials", []):
        sec = rec["section"]
        out.append({
            "seed": sec["seed"],
            "trial": sec["trial"],
            "sectionCoefficients": sec.get("combinations"),
            "saturationDegree": rec["saturationDegree"],
        })
    return out


def analyze(target, trials: int = 3, seed: int = 0, cross_check: bool = True, pair=None) -> AnalysisReport:
    """Run the whole pipeline on a polynomial or a :class:`FamilySpec`."""
    st = _Stages()
    family = None
    if isinstance(target, FamilySpec):
        family = target
        f = st.run("family", family_make, target)
    elif isinstance(target, Poly):
        f = target
    else:
        raise TypeError("analyze expects a Poly or a FamilySpec")
    field = f.ring.field
    data: dict = {
        "schema": SCHEMA,
        "input": {"family": family.name if family else None, "n": family.n if family else None,
                  "requestedField": family.field.label() if family else field.label(),
                  "seed": seed, "trials": trials},
        "field": field.label(),
        "f": str(f),
        "partials": [str(f.derivative(i)) for i in range(3)],
    }
    try:
        pm = st.run("polar_map", polar_map, f)
    except UndefinedMap:
        data.update(fixedComponentFree=None, dominant=None, multidegree=None, naive=None, torsion=None,
                    trials=[], verdict="undefined-map")
        return AnalysisReport(data, st.timing)
    fcf = st.run("fixed_component", fixed_component_free, pm)
    data["fixedComponentFree"] = fcf
    if not fcf:
        data.update(dominant=None, multidegree=None, naive=None, torsion=None, trials=[],
                    verdict="fixed-component", baseLocusKrullDimension=krull_dimension(pm.base_ideal()))
        return AnalysisReport(data, st.timing)

    M = st.run("presentation", minimal_presentation, pm.partials)
    pres = M.to_json()
    hb = M.hilbert_burch()
    determinantal = hb is not None and hb.holds
    pres["determinantal"] = determinantal
    data["presentation"] = pres
    data["fitting"] = st.run("fitting", fitting_ideal, M).to_json()
    if determinantal:
        data["naive"] = naive_degrees(M).__dict__
        data["tteCar"] = st.run("tteCar", tteCar_hypotheses, M, None, pair).to_json()
    else:
        data["naive"] = None
        data["tteCar"] = None

    md = st.run("topological_degree", projective_degrees, pm, trials, seed)
    cert = md.provenance["certificate"]
    data["dominant"] = md.d0 >= 1
    data["multidegree"] = md.to_json()
    data["trials"] = _trials_json(cert)
    data["saturationStatus"] = cert["status"]
    data["workingField"] = cert["workingField"]

    data["graph"] = None
    data["torsion"] = None
    if determinantal and md.d0 >= 1 and cross_check:
        gd = st.run("graph_sections", graph_multidegree_via_sections, M, trials, seed)
        data["graph"] = gd.graph.to_json()
        data["torsion"] = dict(zip(("d0", "d1", "d2"), gd.torsion))
        data["sectionNaive"] = gd.naive.to_json()
        if gd.graph.as_tuple() != md.as_tuple():
            raise InconsistencyError(
                f"fibre saturation {md.as_tuple()} disagrees with graph sections {gd.graph.as_tuple()}",
                {"saturation": cert, "sections": gd.certificate},
            )
        if gd.naive.as_tuple() != naive_degrees(M).as_tuple():
            raise InconsistencyError(
                f"naive sections {gd.naive.as_tuple()} disagree with column degrees {naive_degrees(M).as_tuple()}",
                {"sections": gd.certificate},
            )
    if md.d0 == 0:
        verdict = "not-dominant"
    elif md.d0 == 1:
        verdict = "homaloidal"
    else:
        verdict = "degree-gt-one"
    data["verdict"] = verdict
    return AnalysisReport(data, st.timing)
