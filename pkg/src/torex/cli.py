"""
Command-line front end.

    torex <command> --fan FAN.json [--class JSON] [--seed N] [--json] [--out PATH]

Exit status: 0 on success, 1 when a report fails (verification, certificates,
incomplete closure, no planar figure), 2 on bad input.
"""
from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .cohomology import (
    acyclicity_witness, cohomology, forbidden_cones, in_forbidden_cone, is_acyclic,
    is_strongly_acyclic, proper_non_acyclic,
)
from .collection import (
    build_collection, closure, fullness_region, koszul_moves, verify_strong_exceptional,
)
from .errors import (
    CertificateFailure, GenericityFailure, HomCycle, InputError, NonGenericShift, TorexError,
    UnsupportedDimension,
)
from .fan import classify, ensure_clockwise, validate
from .figure import emit_figure, text_report
from .picard import alpha_functional, f_covector, f_functional, picard_group
from .geometry import zonotope_facets
from .serialize import TOREX_VERSION, dump_report, jsonable, load_classes, make_report, read_fan
from .windows import (
    build_Q, build_window, facet_label, generic_shift, label_to_two_arc, midpoint_certificate,
    moving_lemma_check, window_kind,
)

COMMANDS = ("validate", "classify", "picard", "cohom", "acyclic", "forbidden", "window",
            "collection", "verify", "closure", "figure")

# failures of a computed report, as opposed to bad input
REPORT_ERRORS = (CertificateFailure, GenericityFailure, NonGenericShift, HomCycle)


class _Failure(Exception):
    """A report was produced but does not pass."""

    def __init__(self, result, witnesses=None):
        super().__init__("report failed")
        self.result = result
        self.witnesses = witnesses


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="torex", description=__doc__.split("\n\n")[0].strip())
    parser.add_argument("--version", action="version", version=f"torex {TOREX_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    helps = {
        "validate": "check that the fan is complete and simplicial",
        "classify": "Fano, nef-Fano or neither",
        "picard": "Picard group, divisor classes, canonical class",
        "cohom": "cohomology dimensions of a line bundle",
        "acyclic": "acyclicity and strong acyclicity of a line bundle",
        "forbidden": "forbidden cones (and membership of --class)",
        "window": "window polytope, generic shift and certificates",
        "collection": "build the exceptional collection",
        "verify": "verify strong exceptionality by full cohomology",
        "closure": "Koszul closure of the collection in an enlarged window",
        "figure": "SVG figure of the window plane",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, help=helps[name])
        p.add_argument("--fan", required=True, metavar="PATH", help="fan JSON file")
        p.add_argument("--class", dest="cls", metavar="JSON",
                       help='class {"free": [...], "torsion": [...]} or a list of them')
        p.add_argument("--seed", type=int, default=0, help="seed for the generic shift")
        p.add_argument("--json", action="store_true", help="machine-readable report")
        if name == "figure":
            p.add_argument("--out", metavar="PATH.svg", help="output file")
            p.add_argument("--width", type=int, default=600)
            p.add_argument("--height", type=int, default=600)
        if name == "closure":
            p.add_argument("--scale", type=int, default=3, help="window scale factor")
    return parser


def _need_class(args, pic, many: bool = False):
    if args.cls is None:
        if many:
            return None
        raise InputError(f"{args.command} needs --class")
    classes = load_classes(pic, args.cls)
    if not many and len(classes) != 1:
        raise InputError("--class: expected a single class")
    return classes if many else classes[0]


# ---------------------------------------------------------------------------
# Commands; each returns (result, witnesses) or raises _Failure

def cmd_validate(fan, args):
    rep = validate(fan)
    result = {"ok": rep.ok, "n": fan.n, "d": fan.d}
    if not rep.ok:
        raise _Failure(result, rep.issues)
    return result, []


def cmd_classify(fan, args):
    return {"class": classify(fan).value}, []


def cmd_picard(fan, args):
    pic = picard_group(fan)
    result = {
        "n": pic.n,
        "rank": pic.k,
        "torsion": list(pic.torsion),
        "E": [pic.E(i) for i in range(pic.n)],
        "canonical": pic.canonical,
        "kappa": list(pic.kappa),
        "f_weights": list(f_functional(fan)),
        "f": list(f_covector(pic)),
    }
    if pic.k == 2:
        result["alpha"] = list(alpha_functional(fan))
    return result, []


def cmd_cohom(fan, args):
    pic = picard_group(fan)
    L = _need_class(args, pic)
    table = cohomology(pic, L)
    return {"class": L, "dims": table.dims}, table.contributions


def cmd_acyclic(fan, args):
    pic = picard_group(fan)
    L = _need_class(args, pic)
    wit = acyclicity_witness(pic, L)
    return {"class": L, "acyclic": is_acyclic(pic, L),
            "strongly_acyclic": is_strongly_acyclic(pic, L)}, [wit] if wit else []


def cmd_forbidden(fan, args):
    pic = picard_group(fan)
    cones = forbidden_cones(pic)
    result = {"count": len(cones), "cones": cones}
    if args.cls is not None:
        L = _need_class(args, pic)
        result["class"] = L
        result["containing"] = [list(I) for I in proper_non_acyclic(fan)
                                if in_forbidden_cone(pic, I, L)]
    return result, []


def cmd_window(fan, args):
    pic = picard_group(fan)
    kind = window_kind(pic)
    if kind == "delpezzo":
        fan, _ = ensure_clockwise(fan)
        pic = picard_group(fan)
    window = build_window(pic, kind)
    cert = generic_shift(pic, window, args.seed)
    result = {
        "kind": kind,
        "inequalities": [{"normal": list(a), "bound": c} for a, c in window.polytope.ineqs],
        "generators": [list(g) for g in window.zonotope.generators],
        "shift": cert,
    }
    witnesses = []
    if kind == "delpezzo":
        hatT, P_hat = window.hat_part["hatT"], window.hat_part["P_hat"]
        Q = build_Q(pic, hatT.hat)
        result["midpoint_certificate"] = midpoint_certificate(pic, Q, hatT, P_hat)
        moves = []
        for fc in zonotope_facets(P_hat):
            I = label_to_two_arc(facet_label(fc.normal, hatT.that), pic.n)
            ok, wit = moving_lemma_check(hatT, P_hat, I)
            moves.append({"I": list(I), "ok": ok})
            if not ok:
                witnesses.append(wit)
        result["moving_lemma"] = moves
        if witnesses:
            raise _Failure(result, witnesses)
    return result, witnesses


def cmd_collection(fan, args):
    coll = build_collection(fan, args.seed)
    result = coll.to_dict()
    if not coll.count_check:
        raise _Failure(result, [{"count": len(coll.classes), "expected": coll.expected}])
    return result, []


def cmd_verify(fan, args):
    pic = picard_group(fan)
    classes = _need_class(args, pic, many=True)
    if classes is None:
        coll = build_collection(fan, args.seed)
        pic, classes = coll.pic, coll.classes
    report = verify_strong_exceptional(pic, classes)
    result = {"passed": report["passed"], "pairs": report["pairs"], "classes": classes,
              "h0": report["h0"], "strongly_acyclic": report["strongly_acyclic"],
              "strong_implies_acyclic": report["strong_implies_acyclic"]}
    witnesses = report["failures"] + report["inconsistencies"]
    if not report["passed"] or not report["strong_implies_acyclic"]:
        raise _Failure(result, witnesses)
    return result, witnesses


def cmd_closure(fan, args):
    coll = build_collection(fan, args.seed)
    pic = coll.pic
    start = coll.classes
    if args.cls is not None:
        start = _need_class(args, pic, many=True)
    region = fullness_region(coll, args.scale)
    moves = koszul_moves(pic.fan)
    trace = closure(pic, start, region, moves)
    result = {"complete": trace.complete, "rounds": trace.rounds,
              "region_size": len(trace.region), "derived": len(trace.generations),
              "trace": trace}
    if not trace.complete:
        missing = sorted(set(trace.region) - trace.known())
        raise _Failure(result, [{"missing": missing[:20]}])
    return result, []


def cmd_figure(fan, args):
    pic = picard_group(fan)
    try:
        data = emit_figure(pic, {"seed": args.seed}, args.out, args.width, args.height)
    except UnsupportedDimension as exc:
        raise _Failure({"svg": None, "text": text_report(pic, str(exc))})
    result = {"svg_bytes": len(data), "out": args.out,
              "polygons": data.count(b"<polygon"), "wedges": data.count(b'class="wedge"')}
    if args.out is None and not args.json:
        result["svg"] = data.decode("utf-8")
    return result, []


HANDLERS = {name: globals()[f"cmd_{name}"] for name in COMMANDS}


# ---------------------------------------------------------------------------
# Text rendering

def _text(command: str, fan_name: str, result, witnesses) -> str:
    data = jsonable(result)
    if command == "figure" and "svg" in data:
        return data["svg"] if data["svg"] is not None else data["text"]
    lines = [f"{command} {fan_name}".rstrip()]
    for key, val in data.items():
        if key in ("trace", "h0", "strongly_acyclic", "inequalities", "cones") and isinstance(val, list) \
                and len(val) > 12:
            lines.append(f"  {key}: <{len(val)} entries; use --json>")
        else:
            lines.append(f"  {key}: {val}")
    wit = jsonable(witnesses)
    if wit:
        lines.append(f"  witnesses: {len(wit)}")
        for w in wit[:10]:
            lines.append(f"    {w}")
    return "\n".join(lines) + "\n"


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    status = 0
    fan_name = ""
    try:
        fan = read_fan(args.fan)
        fan_name = fan.name
        result, witnesses = HANDLERS[args.command](fan, args)
    except _Failure as fail:
        status = 1
        result, witnesses = fail.result, fail.witnesses
    except REPORT_ERRORS as exc:
        status = 1
        result = {"error": type(exc).__name__, "message": str(exc)}
        face = getattr(exc, "face", None)
        witnesses = [{"face": face}] if face is not None else []
    except InputError as exc:
        print(f"torex: error: {exc}", file=err)
        return 2
    except TorexError as exc:
        print(f"torex: error: {type(exc).__name__}: {exc}", file=err)
        return 2
    if args.json:
        out.write(dump_report(make_report(args.command, fan_name, result, witnesses)))
    else:
        out.write(_text(args.command, fan_name, result, witnesses))
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
