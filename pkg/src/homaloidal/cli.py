"""Command-line interface: ``homaloidal <command> [options]``.

Exit status: 0 on success, 1 when two independent degree computations
disagree, 2 on usage errors, 3 on other computational failures.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .arrangements import LineArrangement, classify_arrangement, sweep_projective_plane
from .errors import (
    BudgetExceeded,
    FieldTooSmall,
    HomaloidalError,
    Inconclusive,
    InconsistencyError,
    InvalidField,
    PolySyntaxError,
)
from .families import FAMILIES, FamilySpec
from .fields import QQ, field_make
from .poly import Ring, poly_parse
from .report import analyze
from .syzygy import fitting_ideal, minimal_presentation, naive_degrees, tteCar_hypotheses

EXIT_OK, EXIT_INCONSISTENT, EXIT_USAGE, EXIT_FAILURE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_field(text: str):
    """``0`` or ``Q`` for the rationals, ``p`` or ``p:e`` for finite fields."""
    text = text.strip()
    if text.upper() in ("0", "Q", "QQ"):
        return QQ
    try:
        if ":" in text:
            p, e = (int(x) for x in text.split(":"))
        else:
            p, e = int(text), 1
    except ValueError:
        raise UsageError(f"cannot read field {text!r}; use 0, p or p:e")
    return field_make(p, e)


def _parse_pair(text):
    if text is None:
        return None
    names = [s.strip() for s in text.split(",")]
    if len(names) != 2 or any(n not in ("x0", "x1", "x2") for n in names):
        raise UsageError("--pair expects two of x0,x1,x2, e.g. x1,x2")
    return tuple(int(n[1]) for n in names)


def _parse_range(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        if "-" in part:
            a, b = part.split("-")
            out += list(range(int(a), int(b) + 1))
        else:
            out.append(int(part))
    return out


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--field", default="0", help="0 for Q, p for GF(p), p:e for GF(p^e)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--json", action="store_true", help="print the JSON report")
    p.add_argument("--out", metavar="FILE", help="write the output to FILE")
    p.add_argument("--verbose", "-v", action="count", default=0)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="homaloidal", description="Decide whether plane curves are homaloidal.")
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="full analysis of one polynomial")
    a.add_argument("--poly", required=True)
    a.add_argument("--pair", help="coordinate pair for the torsion-lemma check, e.g. x1,x2")
    a.add_argument("--no-cross-check", action="store_true")

    f = sub.add_parser("family", parents=[common], help="analyze a named family member")
    f.add_argument("--name", required=True, choices=FAMILIES)
    f.add_argument("--n", type=int)
    f.add_argument("--slope-seed", type=int, default=0)
    f.add_argument("--no-extension", action="store_true", help="fail instead of extending a small field")

    r = sub.add_parser("arrangement", parents=[common], help="classify a line arrangement")
    r.add_argument("--lines", required=True, help='semicolon separated forms, e.g. "x0; x1; x0+x1; x2"')
    r.add_argument("--cross-check", action="store_true", help="compare with the algebraic degree")

    s = sub.add_parser("sweep", parents=[common], help="classify all d-subsets of lines of PG(2,q)")
    s.add_argument("--lines", required=True, help="line counts d, e.g. 4 or 4,5 or 4-6")
    s.add_argument("--sample", type=int, default=0, help="algebraic spot checks per d")
    s.add_argument("--csv", metavar="FILE", help="write one row per subset")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--budget", type=int, default=250_000)

    y = sub.add_parser("syzygy", parents=[common], help="presentation matrix of the partials")
    y.add_argument("--poly", required=True)
    y.add_argument("--pair")
    return parser


def _emit(args, payload: dict, text: str):
    out = json.dumps(payload, indent=2, sort_keys=True) if args.json else text
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out + "\n")
    else:
        print(out)


def _report_text(doc: dict) -> str:
    lines = [f"f = {doc['f']}  over {doc['field']}", f"verdict: {doc['verdict']}"]
    for key in ("multidegree", "naive", "graph", "torsion"):
        v = doc.get(key)
        if v:
            lines.append(f"{key}: ({v['d0']}, {v['d1']}, {v['d2']})")
    pres = doc.get("presentation")
    if pres:
        lines.append(f"presentation column degrees: {pres['columnDegrees']}")
    fit = doc.get("fitting")
    if fit and fit.get("radical"):
        lines.append(f"Fitting ideal radical: {fit['radical']}")
    tte = doc.get("tteCar")
    if tte:
        lines.append(f"torsion-lemma hypotheses on {tuple(tte['pair'])}: {'pass' if tte['passed'] else 'fail'} {tte['clauses']}")
    return "\n".join(lines)


def _cmd_analyze(args, field):
    f = poly_parse(args.poly, field)
    rep = analyze(f, args.trials, args.seed, not args.no_cross_check, _parse_pair(args.pair))
    doc = rep.to_json()
    _emit(args, doc, _report_text(doc))


def _cmd_family(args, field):
    spec = FamilySpec(args.name, args.n, field, args.slope_seed, not args.no_extension)
    rep = analyze(spec, args.trials, args.seed)
    doc = rep.to_json()
    _emit(args, doc, _report_text(doc))


def _cmd_arrangement(args, field):
    arr = LineArrangement.parse(args.lines, field)
    v = classify_arrangement(arr, cross_check=args.cross_check, seed=args.seed, trials=args.trials)
    doc = {"schema": "homaloidal.arrangement.v1", "field": field.label(), "lines": str(arr), **v.to_json()}
    text = [f"{arr.d} lines over {field.label()}: {v.classification}",
            "t_r: " + ", ".join(f"t{r}={c}" for r, c in v.profile.t.items()),
            f"combinatorial d0: {v.d0_combinatorial}"]
    if v.algebraic_d0 is not None:
        text.append(f"algebraic d0: {v.algebraic_d0}")
    _emit(args, doc, "\n".join(text))


def _cmd_sweep(args, field):
    if field.kind == "Q":
        raise UsageError("sweeps need a finite field")
    rep = sweep_projective_plane(field.characteristic, field.extension_degree, _parse_range(args.lines),
                                 args.sample, args.seed, args.workers, args.budget, trials=args.trials)
    if args.csv:
        rep.write_csv(args.csv)
    summary = rep.summary()
    bad = [c for c in rep.checks if not c["agree"]]
    if bad:
        raise InconsistencyError(f"{len(bad)} algebraic spot checks disagree", {"checks": bad})
    text = []
    for d, s in summary["perD"].items():
        text.append(f"d={d}: {s['subsets']} subsets, {s['homaloidal']} homaloidal "
                    f"(all near-pencils: {s['homaloidalAllNearPencils']}), verdicts {s['verdicts']}")
    text.append(f"algebraic checks: {summary['algebraicChecks']['agree']}/{summary['algebraicChecks']['count']} agree")
    _emit(args, summary, "\n".join(text))


def _cmd_syzygy(args, field):
    f = poly_parse(args.poly, field)
    gens = [f.derivative(i) for i in range(3)]
    if all(g.is_zero() for g in gens):
        raise UsageError("all partial derivatives vanish")
    M = minimal_presentation(gens)
    doc = {"schema": "homaloidal.syzygy.v1", "field": field.label(), "f": str(f),
           "presentation": M.to_json(), "fitting": fitting_ideal(M).to_json()}
    text = [str(M), f"column degrees: {M.column_degrees}"]
    hb = M.hilbert_burch()
    if hb is not None:
        text.append(f"Hilbert-Burch: {'holds' if hb.holds else 'fails'}"
                    + (f" (scalar {field.format(hb.scalar)})" if hb.holds else ""))
        if hb.holds:
            nd = naive_degrees(M)
            tte = tteCar_hypotheses(M, pair=_parse_pair(args.pair))
            doc["naive"] = nd.__dict__
            doc["tteCar"] = tte.to_json()
            text.append(f"naive degrees: {nd.as_tuple()}")
            text.append(f"torsion-lemma hypotheses: {'pass' if tte.passed else 'fail'} {tte.clauses}")
    rad = doc["fitting"]["radical"]
    text.append(f"Fitting ideal radical: {rad}")
    _emit(args, doc, "\n".join(text))


COMMANDS = {
    "analyze": _cmd_analyze,
    "family": _cmd_family,
    "arrangement": _cmd_arrangement,
    "sweep": _cmd_sweep,
    "syzygy": _cmd_syzygy,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        field = parse_field(args.field)
        COMMANDS[args.command](args, field)
    except (UsageError, PolySyntaxError, InvalidField, FieldTooSmall, BudgetExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InconsistencyError, Inconclusive) as exc:
        print(f"inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except HomaloidalError as exc:
        stage = getattr(exc, "stage", None)
        print(f"failure{' in ' + stage if stage else ''}: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
