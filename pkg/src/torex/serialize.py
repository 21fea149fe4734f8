"""
JSON documents: fan input, class arguments and command reports.

Every report carries ``torex_version``; readers reject unknown fields so a
document written by one version is never silently misread by another.
Errors in user input are raised as :class:`InputError` with a
``line:column`` prefix whenever a position can be located.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any, Sequence

from .errors import InputError, TorexError
from .fan import StackyFan, face_fan_from_points

TOREX_VERSION = "0.1.0"

FAN_FIELDS = {"d", "rays", "max_cones", "trusted_complete", "name", "torex_version"}
CLASS_FIELDS = {"free", "torsion"}
REPORT_FIELDS = {"torex_version", "command", "fan_name", "result", "witnesses"}


def _position(text: str, index: int) -> tuple[int, int]:
    line = text.count("\n", 0, index) + 1
    col = index - (text.rfind("\n", 0, index) + 1) + 1
    return line, col


def _key_position(text: str, key: str) -> tuple[int, int]:
    m = re.search(r'"%s"\s*:' % re.escape(key), text)
    return _position(text, m.start()) if m else (1, 1)


def parse_json(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def _reject_unknown(obj: dict, allowed: set, text: str, source: str, what: str):
    if not isinstance(obj, dict):
        raise InputError(f"{source}:1:1: {what} must be a JSON object")
    for key in obj:
        if key not in allowed:
            line, col = _key_position(text, key)
            raise InputError(f"{source}:{line}:{col}: unknown field {key!r} in {what}")


def _int_list(x, what: str, source: str, text: str, key: str) -> list[int]:
    if not isinstance(x, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in x):
        line, col = _key_position(text, key)
        raise InputError(f"{source}:{line}:{col}: {what} must be a list of integers")
    return list(x)


# ---------------------------------------------------------------------------
# Fans

def fan_to_dict(fan: StackyFan) -> dict:
    return fan.to_dict()


def fan_from_dict(obj: dict, text: str = "", source: str = "<input>") -> StackyFan:
    _reject_unknown(obj, FAN_FIELDS, text, source, "fan document")
    if "rays" not in obj:
        raise InputError(f"{source}:1:1: fan document needs 'rays'")
    rays_raw = obj["rays"]
    if not isinstance(rays_raw, list) or not rays_raw:
        line, col = _key_position(text, "rays")
        raise InputError(f"{source}:{line}:{col}: 'rays' must be a non-empty list")
    rays = [_int_list(v, "each ray", source, text, "rays") for v in rays_raw]
    d = obj.get("d", len(rays[0]))
    if not isinstance(d, int) or isinstance(d, bool) or any(len(v) != d for v in rays):
        line, col = _key_position(text, "d")
        raise InputError(f"{source}:{line}:{col}: rays must all have length d")
    name = obj.get("name", "")
    if not isinstance(name, str):
        line, col = _key_position(text, "name")
        raise InputError(f"{source}:{line}:{col}: 'name' must be a string")
    trusted = obj.get("trusted_complete", False)
    if not isinstance(trusted, bool):
        line, col = _key_position(text, "trusted_complete")
        raise InputError(f"{source}:{line}:{col}: 'trusted_complete' must be a boolean")
    cones = obj.get("max_cones")
    if cones is None:
        try:
            return face_fan_from_points(rays, name=name)
        except TorexError as exc:
            raise InputError(
                f"{source}:1:1: no max_cones given and the rays do not span a Fano face fan: {exc}"
            ) from None
    if not isinstance(cones, list):
        line, col = _key_position(text, "max_cones")
        raise InputError(f"{source}:{line}:{col}: 'max_cones' must be a list")
    cones = [_int_list(c, "each cone", source, text, "max_cones") for c in cones]
    for c in cones:
        if any(i < 0 or i >= len(rays) for i in c):
            line, col = _key_position(text, "max_cones")
            raise InputError(f"{source}:{line}:{col}: cone {c} refers to a missing ray")
    return StackyFan(d, tuple(map(tuple, rays)), tuple(map(tuple, cones)), trusted, name)


def load_fan(text: str, source: str = "<input>") -> StackyFan:
    return fan_from_dict(parse_json(text, source), text, source)


def read_fan(path: str) -> StackyFan:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    return load_fan(text, path)


# ---------------------------------------------------------------------------
# Classes

def class_from_dict(pic, obj: dict, text: str = "", source: str = "--class"):
    _reject_unknown(obj, CLASS_FIELDS, text, source, "class")
    free = _int_list(obj.get("free"), "'free'", source, text, "free")
    torsion = _int_list(obj.get("torsion", []), "'torsion'", source, text, "torsion")
    try:
        return pic.make_class(free, torsion)
    except ValueError as exc:
        raise InputError(f"{source}:1:1: {exc}") from None


def load_classes(pic, text: str, source: str = "--class") -> list:
    """One class object or a list of them."""
    obj = parse_json(text, source)
    items = obj if isinstance(obj, list) else [obj]
    return [class_from_dict(pic, x, text, source) for x in items]


def classes_to_json(classes: Sequence) -> list[dict]:
    return [c.to_dict() for c in classes]


# ---------------------------------------------------------------------------
# Reports

def jsonable(x: Any) -> Any:
    """Convert library values into plain JSON data; rationals become strings."""
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, bool) or x is None or isinstance(x, (int, str, float)):
        return x
    if hasattr(x, "to_dict"):
        return jsonable(x.to_dict())
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [jsonable(v) for v in items]
    raise TypeError(f"cannot serialize {type(x).__name__}")


def make_report(command: str, fan_name: str, result: Any, witnesses: Any = None) -> dict:
    return {
        "torex_version": TOREX_VERSION,
        "command": command,
        "fan_name": fan_name,
        "result": jsonable(result),
        "witnesses": jsonable(witnesses if witnesses is not None else []),
    }


def dump_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def load_report(text: str, source: str = "<report>") -> dict:
    obj = parse_json(text, source)
    _reject_unknown(obj, REPORT_FIELDS, text, source, "report")
    missing = REPORT_FIELDS - set(obj)
    if missing:
        raise InputError(f"{source}:1:1: report is missing {sorted(missing)}")
    if obj["torex_version"] != TOREX_VERSION:
        line, col = _key_position(text, "torex_version")
        raise InputError(f"{source}:{line}:{col}: unsupported torex_version {obj['torex_version']!r}")
    return obj


def trace_from_dict(pic, obj: dict):
    """Rebuild a :class:`ClosureTrace` from its JSON form."""
    from .collection import ClosureTrace

    def cls(c):
        return pic.make_class(c["free"], c.get("torsion", []))

    trace = ClosureTrace([cls(c) for c in obj["start"]], [cls(c) for c in obj["region"]])
    trace.generations = [
        {"added": cls(g["added"]), "move": g["move"], "anchor": cls(g["anchor"]),
         "round": g["round"]}
        for g in obj["generations"]
    ]
    trace.complete = obj["complete"]
    trace.rounds = obj["rounds"]
    return trace


def classes_from_json(pic, items: Sequence[dict]) -> list:
    return [pic.make_class(c["free"], c.get("torsion", [])) for c in items]


def shift_from_dict(obj: dict):
    from .windows import ShiftCertificate
    return ShiftCertificate(tuple(Fraction(x) for x in obj["p"]), obj["seed"], obj["attempts"],
                            obj["interior_count"], obj.get("boundary_hits", 0))
