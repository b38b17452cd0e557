"""Input parsing, analysis reports, and the command line front end.

Input is a small JSON schema naming the cone by exactly one of its
three presentations.  Reports are plain dicts serialized with sorted
keys so identical input gives identical bytes; the human rendering is
derived from the same dict.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .cells import cell_census, enumerate_cells, has_zero_cell, open_conic
from .chambers import (
    canonical_class,
    degree,
    enumerate_classes,
    is_feasible,
)
from .complexes import (
    conic_complex,
    global_dimension,
    nccr_verdict,
    pdim_simple,
    resolution,
    smith_invariants,
    verify_acyclicity,
)
from .cone import (
    ConeSpec,
    content_hash,
    from_dual_rays,
    from_normals,
    from_primal_rays,
)
from .errors import (
    InputError,
    InternalInvariantError,
    SupportNotClosedError,
    UnsupportedOperationError,
)
from .frobenius import decompose_root, dmodule_report, minimal_complete_q
from .ratgeom import intvec
from .svg import render_svg_2d

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class ConeInput:
    """Validated input: rank plus exactly one cone presentation."""

    rank: int
    normals: tuple | None = None
    dual_rays: tuple | None = None
    primal_rays: tuple | None = None
    labels: tuple | None = None


@dataclass(frozen=True)
class AnalyzeOptions:
    """Optional extras folded into the full analysis report."""

    acyclicity_radius: int | None = None
    frobenius_q: int | None = None
    frobenius_minimal: bool = False
    dmodule_prime: int | None = None
    supports: tuple = ()


def parse_input(text: str) -> ConeInput:
    """Parse and validate the JSON cone description."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise InputError(
            f"invalid JSON at line {err.lineno} column {err.colno}: "
            f"{err.msg}") from None
    if not isinstance(data, dict):
        raise InputError("input must be a JSON object")
    known = {"rank", "normals", "dual_rays", "primal_rays", "labels"}
    for key in data:
        if key not in known:
            raise InputError(f"unknown field {key!r}")
    rank = data.get("rank")
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
        raise InputError("field 'rank' must be a positive integer")
    given = [f for f in ("normals", "dual_rays", "primal_rays") if f in data]
    if len(given) != 1:
        raise InputError(
            "exactly one of 'normals', 'dual_rays', 'primal_rays' "
            "must be given")
    fieldname = given[0]
    rows = data[fieldname]
    if not isinstance(rows, list) or not rows:
        raise InputError(f"field {fieldname!r} must be a nonempty list")
    vecs = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != rank:
            raise InputError(
                f"entry {i} of {fieldname!r} must be a list of length {rank}")
        for x in row:
            if not isinstance(x, int) or isinstance(x, bool):
                raise InputError(
                    f"entry {i} of {fieldname!r} has a non-integer value")
        vecs.append(tuple(row))
    labels = None
    if "labels" in data:
        raw = data["labels"]
        if (not isinstance(raw, list)
                or len(raw) != len(vecs)
                or not all(isinstance(s, str) for s in raw)):
            raise InputError(
                "field 'labels' must list one string per input vector")
        labels = tuple(raw)
    kwargs = {fieldname: tuple(vecs)}
    return ConeInput(rank=rank, labels=labels, **kwargs)


def build_cone(inp: ConeInput) -> ConeSpec:
    if inp.normals is not None:
        return from_normals(inp.rank, inp.normals)
    if inp.dual_rays is not None:
        return from_dual_rays(inp.rank, inp.dual_rays)
    return from_primal_rays(inp.rank, inp.primal_rays)


def _num(x):
    # JSON-friendly exact number: int when integral, else "p/q".
    f = Fraction(x)
    return int(f) if f.denominator == 1 else str(f)


def _vec(v) -> list:
    return [_num(x) for x in v]


def analyze(spec: ConeSpec, options: AnalyzeOptions = AnalyzeOptions()) -> dict:
    """Full analysis report as a plain JSON-serializable dict."""
    classes = enumerate_classes(spec)
    warnings = []
    class_rows = []
    for rep in classes.reps:
        census = cell_census(spec, rep)
        class_rows.append({
            "label": classes.label_of(rep),
            "ceiling": list(rep),
            "degree": degree(rep),
            "cell_census": {str(k): v for k, v in sorted(census.items())},
            "pdim": pdim_simple(spec, rep),
            "has_zero_cell": has_zero_cell(spec, rep),
        })
    nontrivial = []
    for rep in classes.reps:
        for k, invs in enumerate(smith_invariants(spec, rep)):
            if any(x != 1 for x in invs):
                nontrivial.append({
                    "class": classes.label_of(rep),
                    "degree": k,
                    "invariants": list(invs),
                })
    if nontrivial:
        warnings.append(
            "WARNING: nontrivial Smith invariants found; homology ranks "
            "may depend on the field characteristic")
    verdict = nccr_verdict(spec)
    report = {
        "schema_version": SCHEMA_VERSION,
        "content_hash": content_hash(spec),
        "cone": {
            "rank": spec.rank,
            "normals": [list(n) for n in spec.normals],
            "simplicial": len(spec.normals) == spec.rank,
        },
        "classes": class_rows,
        "class_count": classes.bfs_count,
        "grid_class_count": classes.grid_count,
        "global_dimension": global_dimension(spec),
        "smith": {
            "all_trivial": not nontrivial,
            "nontrivial": nontrivial,
        },
        "nccr": {
            "verdict": verdict.verdict,
            "support": [classes.label_of(r) for r in verdict.support],
            "complete": verdict.complete,
            "witness": (None if verdict.witness is None
                        else classes.label_of(verdict.witness)),
            "reasons": list(verdict.reasons),
        },
        "warnings": warnings,
    }
    if options.acyclicity_radius is not None:
        pairs = []
        for a in classes.reps:
            for b in classes.reps:
                rpt = verify_acyclicity(
                    spec, a, b, window=options.acyclicity_radius)
                pairs.append({
                    "chamber": classes.label_of(a),
                    "other": classes.label_of(b),
                    "radius": rpt.radius,
                    "checked": rpt.checked,
                    "hits": len(rpt.hits),
                    "failures": len(rpt.failures),
                    "passed": rpt.passed,
                })
        report["acyclicity"] = {
            "radius": options.acyclicity_radius,
            "pairs": pairs,
            "all_passed": all(p["passed"] for p in pairs),
        }
    frob = {}
    if options.frobenius_q is not None:
        frob["q"] = _root_block(spec, classes, options.frobenius_q)
    if options.frobenius_minimal:
        qmin = minimal_complete_q(spec)
        frob["minimal_complete_q"] = qmin
        frob["at_minimal_q"] = _root_block(spec, classes, qmin)
    if options.dmodule_prime is not None:
        rpt = dmodule_report(spec, options.dmodule_prime)
        frob["dmodule"] = {
            "p": rpt.p,
            "minimal_e": rpt.minimal_e,
            "q_at_e": rpt.q_at_e,
            "bounds": [rpt.bound_low, rpt.bound_high],
            "note": rpt.note,
        }
    if frob:
        report["frobenius"] = frob
    if options.supports:
        rows = []
        for sup in options.supports:
            reps = tuple(_parse_class(spec, classes, s) for s in sup)
            v = nccr_verdict(spec, support=reps)
            rows.append({
                "support": [classes.label_of(r) for r in v.support],
                "verdict": v.verdict,
                "complete": v.complete,
                "witness": (None if v.witness is None
                            else classes.label_of(v.witness)),
                "reasons": list(v.reasons),
            })
        report["partial_supports"] = rows
    return report


def _root_block(spec: ConeSpec, classes, q: int) -> dict:
    dec = decompose_root(spec, q)
    counts = {classes.label_of(rep): n for rep, n in dec.counts}
    for rep in classes.reps:
        counts.setdefault(classes.label_of(rep), 0)
    return {"q": dec.q, "total": dec.total, "counts": counts}


def serialize_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _parse_class(spec: ConeSpec, classes, text: str):
    """A class argument: a label like A1, or a comma-separated ceiling."""
    s = text.strip()
    if s in classes.labels:
        return classes.rep_of(s)
    try:
        vec = intvec(int(p) for p in s.split(","))
    except ValueError:
        raise InputError(
            f"unknown class {text!r}: give a label or a ceiling vector"
        ) from None
    if len(vec) != len(spec.normals):
        raise InputError(
            f"ceiling vector {text!r} needs {len(spec.normals)} entries")
    if not is_feasible(spec, vec):
        raise InputError(f"ceiling vector {text!r} is not a chamber")
    return canonical_class(spec, vec)


def _parse_support(spec: ConeSpec, classes, text: str):
    return tuple(
        _parse_class(spec, classes, part) for part in text.split(",") if part)


# --------------------------------------------------------------------------
# command implementations


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise InputError(f"cannot read input file {path!r}: {err}") from None


def _load_spec(args) -> ConeSpec:
    return build_cone(parse_input(_read_input(args.input)))


def _emit(args, report: dict, text: str) -> str:
    return serialize_report(report) if args.json else text


def _cmd_analyze(args) -> str:
    spec = _load_spec(args)
    supports = tuple(tuple(s.split(",")) for s in args.support or ())
    options = AnalyzeOptions(
        acyclicity_radius=args.window,
        frobenius_q=args.q,
        frobenius_minimal=args.minimal_q,
        dmodule_prime=args.dmodule,
        supports=supports,
    )
    report = analyze(spec, options)
    lines = []
    cone = report["cone"]
    lines.append(f"rank {cone['rank']} cone, "
                 f"{len(cone['normals'])} facet normals"
                 + (" (simplicial)" if cone["simplicial"] else ""))
    lines.append(f"content hash {report['content_hash'][:16]}")
    lines.append(f"classes: {report['class_count']} "
                 f"(grid check {report['grid_class_count']})")
    for row in report["classes"]:
        census = " ".join(
            f"{k}:{v}" for k, v in sorted(row["cell_census"].items(),
                                          key=lambda kv: int(kv[0])))
        lines.append(
            f"  {row['label']} ceiling {tuple(row['ceiling'])} "
            f"degree {row['degree']} pdim {row['pdim']} cells [{census}]")
    lines.append(f"global dimension: {report['global_dimension']}")
    smith = report["smith"]
    lines.append("smith invariants: all trivial" if smith["all_trivial"]
                 else "smith invariants: NONTRIVIAL")
    nccr = report["nccr"]
    lines.append(f"nccr ({'complete' if nccr['complete'] else 'partial'} "
                 f"support): {nccr['verdict']}")
    for reason in nccr["reasons"]:
        lines.append(f"  {reason}")
    if "acyclicity" in report:
        acy = report["acyclicity"]
        word = "passed" if acy["all_passed"] else "FAILED"
        lines.append(f"acyclicity over radius {acy['radius']}: {word} "
                     f"({len(acy['pairs'])} ordered pairs)")
    if "frobenius" in report:
        frob = report["frobenius"]
        if "q" in frob:
            lines.append(f"frobenius q={frob['q']['q']}: "
                         + _counts_text(frob["q"]["counts"]))
        if "minimal_complete_q" in frob:
            lines.append(
                f"minimal complete q: {frob['minimal_complete_q']}")
        if "dmodule" in frob:
            dm = frob["dmodule"]
            lines.append(
                f"dmodule p={dm['p']}: e={dm['minimal_e']}, "
                f"global dimension in [{dm['bounds'][0]}, {dm['bounds'][1]}]")
    for row in report.get("partial_supports", ()):
        lines.append(
            f"support {{{', '.join(row['support'])}}}: {row['verdict']}")
    for w in report["warnings"]:
        lines.append(w)
    return _emit(args, report, "\n".join(lines) + "\n")


def _counts_text(counts: dict) -> str:
    return " ".join(f"{k}:{v}" for k, v in sorted(counts.items()))


def _cmd_chambers(args) -> str:
    spec = _load_spec(args)
    classes = enumerate_classes(spec)
    rows = [{
        "label": classes.label_of(rep),
        "ceiling": list(rep),
        "degree": degree(rep),
    } for rep in classes.reps]
    report = _wrap(spec, {"classes": rows,
                          "class_count": classes.bfs_count,
                          "grid_class_count": classes.grid_count})
    text = "".join(
        f"{r['label']} ceiling {tuple(r['ceiling'])} degree {r['degree']}\n"
        for r in rows)
    return _emit(args, report, text)


def _cmd_cells(args) -> str:
    spec = _load_spec(args)
    classes = enumerate_classes(spec)
    rep = _parse_class(spec, classes, args.cls)
    rows = []
    for cell in enumerate_cells(spec, rep):
        rows.append({
            "omega": list(cell.omega),
            "codim": cell.codim,
            "witness": _vec(cell.witness),
            "open_conic": list(open_conic(cell)),
            "class": classes.label_of(
                canonical_class(spec, open_conic(cell))),
        })
    census = {str(k): v for k, v in sorted(cell_census(spec, rep).items())}
    report = _wrap(spec, {"chamber": list(rep),
                          "label": classes.label_of(rep),
                          "cells": rows, "census": census})
    text = "".join(
        f"codim {r['codim']} omega {tuple(r['omega'])} "
        f"open_conic {tuple(r['open_conic'])} class {r['class']} "
        f"witness ({', '.join(str(w) for w in r['witness'])})\n"
        for r in rows)
    return _emit(args, report, text)


def _cmd_complex(args) -> str:
    spec = _load_spec(args)
    classes = enumerate_classes(spec)
    rep = _parse_class(spec, classes, args.cls)
    cx = conic_complex(spec, rep)
    terms = [[{"open_conic": list(vec),
               "class": classes.label_of(canonical_class(spec, vec))}
              for vec in row] for row in cx.terms]
    mats = [[list(r) for r in m] for m in cx.mats]
    report = _wrap(spec, {"chamber": list(rep),
                          "label": classes.label_of(rep),
                          "terms": terms, "differentials": mats})
    lines = []
    for i, row in enumerate(terms):
        summands = ", ".join(
            f"{t['class']}{tuple(t['open_conic'])}" for t in row)
        lines.append(f"degree {i}: {summands}")
    for i, m in enumerate(mats):
        lines.append(f"d[{i + 1} -> {i}] = {m}")
    return _emit(args, report, "\n".join(lines) + "\n")


def _cmd_resolution(args) -> str:
    spec = _load_spec(args)
    classes = enumerate_classes(spec)
    rep = _parse_class(spec, classes, args.cls)
    support = _parse_support(spec, classes, args.support)
    rpt = resolution(spec, support, rep, window=args.window)
    terms = [[{"class": classes.label_of(r), "multiplicity": n}
              for r, n in row] for row in rpt.terms]
    report = _wrap(spec, {
        "chamber": list(rep),
        "label": classes.label_of(rep),
        "support": [classes.label_of(r) for r in rpt.support],
        "terms": terms,
        "length": rpt.length,
        "spliced": rpt.spliced,
        "validated_radius": rpt.validated_radius,
    })
    lines = [f"resolution of {classes.label_of(rep)} over "
             f"{{{', '.join(classes.label_of(r) for r in rpt.support)}}}: "
             f"length {rpt.length}"
             + (" (spliced)" if rpt.spliced else "")]
    for i, row in enumerate(terms):
        body = " + ".join(
            f"{t['multiplicity']}*{t['class']}" for t in row) or "0"
        lines.append(f"degree {i}: {body}")
    if rpt.validated_radius is not None:
        lines.append(f"validated by acyclicity up to radius "
                     f"{rpt.validated_radius}")
    return _emit(args, report, "\n".join(lines) + "\n")


def _cmd_acyclicity(args) -> str:
    spec = _load_spec(args)
    classes = enumerate_classes(spec)
    rows = []
    for a in classes.reps:
        for b in classes.reps:
            rpt = verify_acyclicity(spec, a, b, window=args.window)
            rows.append({
                "chamber": classes.label_of(a),
                "other": classes.label_of(b),
                "radius": rpt.radius,
                "checked": rpt.checked,
                "hits": len(rpt.hits),
                "failures": len(rpt.failures),
                "passed": rpt.passed,
            })
    report = _wrap(spec, {
        "pairs": rows, "all_passed": all(r["passed"] for r in rows)})
    text = "".join(
        f"{r['chamber']} vs {r['other']}: radius {r['radius']}, "
        f"{r['checked']} points, {r['failures']} failures, "
        f"{'passed' if r['passed'] else 'FAILED'}\n"
        for r in rows)
    return _emit(args, report, text)


def _cmd_nccr(args) -> str:
    spec = _load_spec(args)
    classes = enumerate_classes(spec)
    support = (None if args.support is None
               else _parse_support(spec, classes, args.support))
    v = nccr_verdict(spec, support=support)
    report = _wrap(spec, {
        "verdict": v.verdict,
        "support": [classes.label_of(r) for r in v.support],
        "complete": v.complete,
        "witness": None if v.witness is None else classes.label_of(v.witness),
        "reasons": list(v.reasons),
    })
    lines = [f"verdict: {v.verdict}"]
    if v.witness is not None:
        lines.append(f"witness: {classes.label_of(v.witness)}")
    lines.extend(f"  {r}" for r in v.reasons)
    return _emit(args, report, "\n".join(lines) + "\n")


def _cmd_frobenius(args) -> str:
    spec = _load_spec(args)
    classes = enumerate_classes(spec)
    body = {}
    lines = []
    if args.q is not None:
        body["q"] = _root_block(spec, classes, args.q)
        lines.append(f"q={args.q}: " + _counts_text(body["q"]["counts"]))
    if args.minimal:
        qmin = minimal_complete_q(spec)
        body["minimal_complete_q"] = qmin
        body["at_minimal_q"] = _root_block(spec, classes, qmin)
        lines.append(f"minimal complete q: {qmin}")
        lines.append(f"q={qmin}: "
                     + _counts_text(body["at_minimal_q"]["counts"]))
    if args.dmodule is not None:
        rpt = dmodule_report(spec, args.dmodule)
        body["dmodule"] = {
            "p": rpt.p,
            "minimal_e": rpt.minimal_e,
            "q_at_e": rpt.q_at_e,
            "bounds": [rpt.bound_low, rpt.bound_high],
            "note": rpt.note,
        }
        lines.append(
            f"p={rpt.p}: minimal e with p^e complete is {rpt.minimal_e} "
            f"(q={rpt.q_at_e}); differential operator global dimension "
            f"in [{rpt.bound_low}, {rpt.bound_high}]")
        lines.append(rpt.note)
    report = _wrap(spec, body)
    return _emit(args, report, "\n".join(lines) + "\n")


def _parse_window_box(text: str):
    parts = text.split(",")
    if len(parts) != 4:
        raise InputError("svg window must be x0,x1,y0,y1")
    try:
        return tuple(Fraction(p.strip()) for p in parts)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad window value in {text!r}") from None


def _cmd_svg(args) -> str:
    spec = _load_spec(args)
    doc = render_svg_2d(spec, _parse_window_box(args.window))
    if args.out is not None:
        Path(args.out).write_text(doc, encoding="utf-8")
        return f"wrote {args.out}\n"
    return doc


def _wrap(spec: ConeSpec, body: dict) -> dict:
    return {"schema_version": SCHEMA_VERSION,
            "content_hash": content_hash(spec), **body}


# --------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; route through InputError
    # instead so the documented exit codes hold (2 means invariant failure).
    def error(self, message):
        raise InputError(message)


def _parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument(
        "--input", default="-", metavar="FILE",
        help="JSON cone description ('-' for stdin)")
    common.add_argument(
        "--json", action="store_true", help="emit the JSON report")
    top = _Parser(prog="conic",
                  description="chamber combinatorics of a toric cone")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common],
                       help="full report on the cone")
    p.add_argument("--window", type=int, default=None,
                   help="run the acyclicity check at this radius")
    p.add_argument("--q", type=int, default=None,
                   help="include the order-q Frobenius decomposition")
    p.add_argument("--minimal-q", action="store_true",
                   help="include the minimal complete Frobenius order")
    p.add_argument("--dmodule", type=int, default=None, metavar="P",
                   help="include the differential operator report at prime P")
    p.add_argument("--support", action="append", metavar="CLASSES",
                   help="partial support to test, e.g. A0,A1 (repeatable)")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("chambers", parents=[common],
                       help="list the chamber classes")
    p.set_defaults(func=_cmd_chambers)

    p = sub.add_parser("cells", parents=[common],
                       help="cells of one chamber class")
    p.add_argument("cls", metavar="CLASS",
                   help="class label (A1) or ceiling vector (0,0,0,-1)")
    p.set_defaults(func=_cmd_cells)

    p = sub.add_parser("complex", parents=[common],
                       help="conic chain complex of one class")
    p.add_argument("cls", metavar="CLASS")
    p.set_defaults(func=_cmd_complex)

    p = sub.add_parser("resolution", parents=[common],
                       help="resolution of a class over a summand support")
    p.add_argument("--support", required=True, metavar="CLASSES",
                   help="comma-separated class labels, e.g. A0,A1")
    p.add_argument("--window", type=int, default=None,
                   help="validation radius for spliced complexes")
    p.add_argument("cls", metavar="CLASS")
    p.set_defaults(func=_cmd_resolution)

    p = sub.add_parser("acyclicity", parents=[common],
                       help="verify slice exactness on a window")
    p.add_argument("--window", type=int, default=None,
                   help="window radius (defaults per pair)")
    p.set_defaults(func=_cmd_acyclicity)

    p = sub.add_parser("nccr", parents=[common],
                       help="noncommutative crepant resolution verdict")
    p.add_argument("--support", default=None, metavar="CLASSES",
                   help="partial support (default: all classes)")
    p.set_defaults(func=_cmd_nccr)

    p = sub.add_parser("frobenius", parents=[common],
                       help="Frobenius root decompositions")
    p.add_argument("--q", type=int, default=None,
                   help="decompose the order-q root")
    p.add_argument("--minimal", action="store_true",
                   help="find the minimal complete order")
    p.add_argument("--dmodule", type=int, default=None, metavar="P",
                   help="differential operator report at prime P")
    p.set_defaults(func=_cmd_frobenius)

    p = sub.add_parser("svg", parents=[common],
                       help="render the rank-2 chamber decomposition")
    p.add_argument("--window", required=True, metavar="X0,X1,Y0,Y1",
                   help="rational window, e.g. -2,2,-2,2")
    p.add_argument("--out", default=None, metavar="FILE",
                   help="write the SVG here instead of stdout")
    p.set_defaults(func=_cmd_svg)
    return top


def main(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
        if getattr(args, "command", None) == "frobenius" \
                and args.q is None and not args.minimal \
                and args.dmodule is None:
            raise InputError(
                "frobenius needs at least one of --q, --minimal, --dmodule")
        out = args.func(args)
    except SupportNotClosedError as err:
        print(f"error: {err}", file=sys.stderr)
        for cell in err.cells:
            print(f"  outside support: cell with open conic "
                  f"{tuple(open_conic(cell))}", file=sys.stderr)
        return 1
    except (InputError, UnsupportedOperationError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except InternalInvariantError as err:
        print(f"internal invariant violated: {err}", file=sys.stderr)
        return 2
    if out:
        sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
