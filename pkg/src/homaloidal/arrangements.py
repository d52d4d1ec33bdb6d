"""Line arrangements: singular points, the combinatorial degree, sweeps.

Lines and points are coefficient triples of field codes.  Points are stored
with their first nonzero coordinate scaled to 1, which makes them unique.
"""

from __future__ import annotations

import csv
import itertools
import json
import logging
import math
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

from .errors import BudgetExceeded, ConcurrentArrangement, InconsistencyError, InvalidField, NotZeroDimensional
from .fields import FieldSpec, field_make
from .poly import Poly, Ring, poly_parse

log = logging.getLogger(__name__)

__all__ = [
    "LineArrangement",
    "SingularityProfile",
    "CombinatorialVerdict",
    "SweepReport",
    "singularity_profile",
    "multiplicity_mz",
    "combinatorial_d0",
    "near_pencil_test",
    "classify_arrangement",
    "projective_plane_lines",
    "sweep_projective_plane",
    "random_arrangement",
    "near_pencil_lines",
]


def _canonical(field, v):
    lead = next((c for c in v if c != 0), None)
    if lead is None:
        raise ValueError("zero vector has no projective point")
    if lead == 1:
        return tuple(v)
    inv = field.inv(lead)
    return tuple(field.mul(c, inv) for c in v)


def _cross(field, a, b):
    m, s = field.mul, field.sub
    return (
        s(m(a[1], b[2]), m(a[2], b[1])),
        s(m(a[2], b[0]), m(a[0], b[2])),
        s(m(a[0], b[1]), m(a[1], b[0])),
    )


def _dot(field, a, b):
    m, ad = field.mul, field.add
    return ad(ad(m(a[0], b[0]), m(a[1], b[1])), m(a[2], b[2]))


@dataclass
class LineArrangement:
    field: FieldSpec
    lines: tuple  # canonical coefficient triples

    def __post_init__(self):
        self.lines = tuple(_canonical(self.field, l) for l in self.lines)
        if len(self.lines) < 3:
            raise ValueError("an arrangement needs at least three lines")
        if len(set(self.lines)) != len(self.lines):
            raise ValueError("lines must be pairwise non-proportional")

    @property
    def d(self) -> int:
        return len(self.lines)

    @classmethod
    def from_polys(cls, polys) -> "LineArrangement":
        field = polys[0].ring.field
        lines = []
        for p in polys:
            if p.degree() != 1 or not p.is_homogeneous():
                raise ValueError(f"{p} is not a linear form")
            row = [0, 0, 0]
            for e, c in p.items():
                row[e.index(1)] = c
            lines.append(tuple(row))
        return cls(field, tuple(lines))

    @classmethod
    def parse(cls, text: str, field: FieldSpec) -> "LineArrangement":
        """From ``"x0; x1; x0+x1; x2"``."""
        ring = Ring(field, ("x0", "x1", "x2"))
        parts = [s for s in text.split(";") if s.strip()]
        return cls.from_polys([poly_parse(s, ring) for s in parts])

    def forms(self, ring: Ring | None = None) -> list[Poly]:
        ring = ring or Ring(self.field, ("x0", "x1", "x2"))
        return [ring.linear_form(l) for l in self.lines]

    def polynomial(self, ring: Ring | None = None) -> Poly:
        ring = ring or Ring(self.field, ("x0", "x1", "x2"))
        f = ring.one()
        for l in self.forms(ring):
            f = f * l
        return f

    def __str__(self):
        return "; ".join(str(l) for l in self.forms())


@dataclass
class SingularityProfile:
    d: int
    points: list  # (point, r)
    t: dict
    concurrent: bool

    def t_vector(self) -> tuple:
        return tuple(self.t.get(r, 0) for r in range(2, self.d + 1))

    @property
    def sum_tr(self) -> int:
        return sum(self.t.values())

    def to_json(self) -> dict:
        return {"d": self.d, "t": {str(r): c for r, c in sorted(self.t.items())}, "concurrent": self.concurrent}


def singularity_profile(arr: LineArrangement) -> SingularityProfile:
    field = arr.field
    pts = {}
    for a, b in itertools.combinations(arr.lines, 2):
        pt = _canonical(field, _cross(field, a, b))
        if pt not in pts:
            pts[pt] = sum(1 for l in arr.lines if _dot(field, l, pt) == 0)
    t = Counter(pts.values())
    d = arr.d
    if sum(c * r * (r - 1) // 2 for r, c in t.items()) != d * (d - 1) // 2:
        raise AssertionError("pair-count identity violated")
    points = sorted(pts.items(), key=lambda kv: (-kv[1], kv[0]))
    return SingularityProfile(d, points, dict(sorted(t.items())), t.get(d, 0) == 1)


def multiplicity_mz(r: int, p: int) -> int:
    """Length of the base scheme of the polar map at an ``r``-fold point."""
    if r < 2:
        raise ValueError("fold number must be at least 2")
    return (r - 1) ** 2 + (r - 2) if p > 0 and r % p == 0 else (r - 1) ** 2


def combinatorial_d0(profile: SingularityProfile, p: int) -> int:
    if profile.concurrent:
        raise ConcurrentArrangement("all lines pass through one point; the polar map is not dominant")
    d = profile.d
    d0 = (d - 1) ** 2 - sum(c * multiplicity_mz(r, p) for r, c in profile.t.items())
    if p > 0 and all(r % p == 0 for r, c in profile.t.items() if r >= 3 and c):
        if d0 != 1 + profile.sum_tr - d:
            raise AssertionError("combinatorial identity check failed")
    return d0


def near_pencil_test(profile: SingularityProfile) -> tuple[bool, int, bool]:
    """``(is near-pencil, sum of t_r, sum of t_r == d)``."""
    d = profile.d
    others = {r: c for r, c in profile.t.items() if r not in (2, d - 1)}
    if d == 3:
        is_np = profile.t == {2: 3}
    else:
        is_np = profile.t.get(d - 1, 0) == 1 and profile.t.get(2, 0) == d - 1 and not others
    return is_np, profile.sum_tr, profile.sum_tr == d


@dataclass
class CombinatorialVerdict:
    classification: str
    d0_combinatorial: int | None
    near_pencil: bool
    sum_tr: int
    profile: SingularityProfile
    algebraic_d0: int | None = None
    certificate: dict = dc_field(default_factory=dict)

    @property
    def homaloidal(self) -> bool:
        return self.classification in ("triangle", "near-pencil-homaloidal")

    def to_json(self) -> dict:
        out = {
            "classification": self.classification,
            "d0": self.d0_combinatorial,
            "nearPencil": self.near_pencil,
            "sumTr": self.sum_tr,
            "profile": self.profile.to_json(),
        }
        if self.algebraic_d0 is not None:
            out["algebraicD0"] = self.algebraic_d0
        return out


def classify_arrangement(arr: LineArrangement, p: int | None = None, cross_check: bool = False,
                         seed: int = 0, trials: int = 1) -> CombinatorialVerdict:
    p = arr.field.characteristic if p is None else p
    if cross_check and p != arr.field.characteristic:
        raise ValueError("the algebraic cross-check needs p equal to the field characteristic")
    prof = singularity_profile(arr)
    is_np, sum_tr, _ = near_pencil_test(prof)
    if prof.concurrent:
        verdict = CombinatorialVerdict("not-dominant", None, False, sum_tr, prof)
    else:
        d0 = combinatorial_d0(prof, p)
        if arr.d == 3:
            cls = "triangle"
        elif is_np and p > 0 and (arr.d - 1) % p == 0:
            cls = "near-pencil-homaloidal"
        else:
            cls = "not-homaloidal"
        if (d0 == 1) != (cls != "not-homaloidal"):
            raise InconsistencyError(f"classification {cls} contradicts combinatorial d0 = {d0}",
                                     {"profile": prof.to_json()})
        verdict = CombinatorialVerdict(cls, d0, is_np, sum_tr, prof)
    if cross_check:
        check = algebraic_check(arr, verdict.d0_combinatorial, trials, seed)
        verdict.algebraic_d0 = check["algebraic"]
        verdict.certificate = check
        if not check["agree"]:
            raise InconsistencyError(
                f"combinatorial d0 {check['combinatorial']} is inconsistent with algebraic d0 "
                f"{check['algebraic']} for {arr}",
                {"combinatorial": verdict.to_json(), "algebraic": check},
            )
    return verdict


def algebraic_check(arr: LineArrangement, d0_comb: int | None, trials: int = 1, seed: int = 0) -> dict:
    """Compare the combinatorial d0 with the topological degree of the polar map.

    The combinatorial count only subtracts local lengths at singular points.
    When the characteristic does not divide ``d`` every base point is singular
    on the curve, the two numbers must coincide and ``agree`` demands equality.
    When it does divide ``d`` base points off the curve can occur and local
    lengths may differ, so ``agree`` only demands that both sides single out
    the same degree-one cases; ``exact`` and the curve saturation
    ``deg V(I^g : f^∞)`` are kept as diagnostics.
    """
    from .polar import polar_map, topological_degree

    pm = polar_map(arr.polynomial())
    expected = 0 if d0_comb is None else d0_comb
    d0_alg, cert = topological_degree(pm, trials, seed)
    out = {"combinatorial": expected, "algebraic": d0_alg, "exact": d0_alg == expected,
           "certificate": cert}
    p = arr.field.characteristic
    if p == 0 or arr.d % p or d0_comb is None:
        out["agree"] = out["exact"]
        return out
    out["pDividesD"] = True
    try:
        out["curveSaturation"] = topological_degree(pm, trials, seed, against="curve")[0]
    except NotZeroDimensional:
        # the partials share a factor that is not a component of the curve
        out["curveSaturation"] = None
    out["agree"] = (d0_alg == 1) == (expected == 1)
    return out


# -- generators -------------------------------------------------------------------

def near_pencil_lines(field: FieldSpec, n: int, slopes=None) -> LineArrangement:
    """``x0, x1, x0 + c_i x1 (n-2 slopes), x2``."""
    from .families import default_slopes

    slopes = default_slopes(field, n - 2) if slopes is None else slopes
    lines = [(1, 0, 0), (0, 1, 0)] + [(1, c, 0) for c in slopes] + [(0, 0, 1)]
    return LineArrangement(field, tuple(lines))


def random_arrangement(field: FieldSpec, d: int, rng: random.Random, concurrent_ok: bool = False,
                       max_tries: int = 1000) -> LineArrangement:
    for _ in range(max_tries):
        lines = set()
        while len(lines) < d:
            v = [field.random(rng) for _ in range(3)]
            if any(c != 0 for c in v):
                lines.add(_canonical(field, v))
        arr = LineArrangement(field, tuple(sorted(lines)))
        if concurrent_ok or not singularity_profile(arr).concurrent:
            return arr
    raise ValueError("could not draw a non-concurrent arrangement")


def projective_plane_lines(field: FieldSpec) -> list[tuple]:
    """All ``q^2 + q + 1`` lines of PG(2, q), canonical and sorted."""
    elems = list(field.elements())
    lines = set()
    for v in itertools.product(elems, repeat=3):
        if any(c != 0 for c in v):
            lines.add(_canonical(field, v))
    return sorted(lines)


# -- sweeps ------------------------------------------------------------------------

@dataclass
class SweepReport:
    field: str
    lines: list
    rows: list  # dicts: d, subset, t, verdict, d0
    checks: list = dc_field(default_factory=list)
    seed: int = 0

    def homaloidal(self, d: int | None = None) -> list:
        return [r for r in self.rows if r["homaloidal"] and (d is None or r["d"] == d)]

    def summary(self) -> dict:
        per_d: dict = {}
        for r in self.rows:
            s = per_d.setdefault(str(r["d"]), {"subsets": 0, "verdicts": Counter(), "profiles": Counter(),
                                                "homaloidal": 0, "homaloidalAllNearPencils": True})
            s["subsets"] += 1
            s["verdicts"][r["verdict"]] += 1
            s["profiles"][r["t"]] += 1
            if r["homaloidal"]:
                s["homaloidal"] += 1
                s["homaloidalAllNearPencils"] &= r["near_pencil"]
        for s in per_d.values():
            s["verdicts"] = dict(sorted(s["verdicts"].items()))
            s["profiles"] = dict(sorted(s["profiles"].items()))
        return {
            "schema": "homaloidal.sweep.v1",
            "field": self.field,
            "lineCount": len(self.lines),
            "seed": self.seed,
            "perD": per_d,
            "algebraicChecks": {
                "count": len(self.checks),
                "agree": sum(1 for c in self.checks if c["agree"]),
                "exact": sum(1 for c in self.checks if c["exact"]),
            },
        }

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["d", "subset", "t", "verdict", "d0"])
            for r in self.rows:
                w.writerow([r["d"], " ".join(map(str, r["subset"])), r["t"], r["verdict"],
                            "" if r["d0"] is None else r["d0"]])

    def write_summary(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.summary(), fh, indent=2, sort_keys=True)


def _t_string(profile: SingularityProfile) -> str:
    return " ".join(f"t{r}={c}" for r, c in sorted(profile.t.items()))


def _classify_chunk(args):
    p, e, seed_mod, d, start, stop = args
    field = field_make(p, e, seed_mod)
    lines = projective_plane_lines(field)
    out = []
    for idx, subset in enumerate(itertools.islice(itertools.combinations(range(len(lines)), d), start, stop)):
        arr = LineArrangement(field, tuple(lines[i] for i in subset))
        v = classify_arrangement(arr)
        out.append({
            "d": d,
            "index": start + idx,
            "subset": list(subset),
            "t": _t_string(v.profile),
            "verdict": v.classification,
            "d0": v.d0_combinatorial,
            "near_pencil": v.near_pencil,
            "homaloidal": v.homaloidal,
        })
    return out


def sweep_projective_plane(p: int, e: int = 1, d_range=(4,), sample_algebraic: int = 0, seed: int = 0,
                           workers: int = 1, budget: int = 250_000, max_order: int = 9,
                           trials: int = 1) -> SweepReport:
    """Classify every ``d``-subset of the lines of PG(2, p^e) and spot-check a
    seeded sample of them against the algebraic topological degree."""
    field = field_make(p, e)
    q = field.order
    if q > max_order:
        raise InvalidField(f"sweeps are limited to planes of order <= {max_order}, got {q}")
    lines = projective_plane_lines(field)
    N = len(lines)
    d_range = list(d_range)
    total = sum(math.comb(N, d) for d in d_range)
    if total > budget:
        raise BudgetExceeded(f"sweep would classify {total} subsets (budget {budget})")
    jobs = []
    for d in d_range:
        count = math.comb(N, d)
        step = max(1, -(-count // max(1, workers)))
        jobs += [(p, e, 0, d, s, min(s + step, count)) for s in range(0, count, step)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            chunks = list(pool.map(_classify_chunk, jobs))
    else:
        chunks = [_classify_chunk(j) for j in jobs]
    rows = [r for chunk in chunks for r in chunk]
    report = SweepReport(field.label(), lines, rows, seed=seed)
    rng = random.Random(f"sweep:{p}:{e}:{seed}")
    for d in d_range:
        candidates = [r for r in rows if r["d"] == d]
        sample = rng.sample(candidates, min(sample_algebraic, len(candidates)))
        for r in sample:
            arr = LineArrangement(field, tuple(lines[i] for i in r["subset"]))
            check = algebraic_check(arr, r["d0"], trials, seed)
            check.pop("certificate")
            report.checks.append({"d": d, "subset": r["subset"], **check})
    return report
