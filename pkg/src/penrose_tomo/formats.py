"""JSON documents exchanged by the command-line tools.

Only exact values are written: cyclotomic integers as four integers, golden
field numbers as ``[[p_num, p_den], [q_num, q_den]]``.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

from .cyclotomic import CycInt
from .modelset import Patch, WindowSpec
from .qtau import QTau


class FormatError(ValueError):
    """A file or literal does not follow the documented format."""


_FLAT_LIST = re.compile(r"\[\s*(-?\d+(?:,\s*-?\d+)*)\s*\]")


def dumps(doc) -> str:
    """Indented JSON with lists of integers kept on one line."""
    text = json.dumps(doc, indent=1)
    return _FLAT_LIST.sub(lambda m: "[" + ", ".join(v.strip() for v in m.group(1).split(",")) + "]", text) + "\n"


def write(doc, path) -> None:
    Path(path).write_text(dumps(doc))


def read(path):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise FormatError(f"{path}: no such file") from None
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from None


# -- point sets and patches ----------------------------------------------------

def points_to_json(points) -> list:
    return [z.to_json() for z in sorted(set(points))]


def points_from_json(data) -> list[CycInt]:
    if not isinstance(data, list):
        raise FormatError("points must be a list of [a0, a1, a2, a3] arrays")
    try:
        return sorted({CycInt.from_json(p) for p in data})
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def point_set_doc(points) -> dict:
    return {"points": points_to_json(points)}


def load_points(path) -> list[CycInt]:
    """Points of a point-set, patch or solution file."""
    doc = read(path)
    if isinstance(doc, list):
        return points_from_json(doc)
    if not isinstance(doc, dict) or "points" not in doc:
        raise FormatError(f"{path}: expected an object with a 'points' list")
    return points_from_json(doc["points"])


def patch_doc(patch: Patch) -> dict:
    return {
        "spec": patch.spec.to_json(),
        "radius": patch.radius.to_json(),
        "points": points_to_json(patch.points),
    }


def patch_from_doc(doc) -> Patch:
    if not isinstance(doc, dict) or not {"spec", "radius", "points"} <= set(doc):
        raise FormatError("a patch file needs 'spec', 'radius' and 'points'")
    try:
        spec = WindowSpec.from_json(doc["spec"])
        radius = QTau.from_json(doc["radius"])
    except (ValueError, KeyError, TypeError) as exc:
        raise FormatError(f"bad patch header: {exc}") from None
    pts = points_from_json(doc["points"])
    return Patch(spec, radius, tuple(pts))


def load_patch(path) -> Patch:
    return patch_from_doc(read(path))


# -- literals on the command line ----------------------------------------------------

def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"not a rational number: {text!r}") from None


def parse_qtau(text: str) -> QTau:
    """Parse ``a``, ``a/b``, ``a/b+c/dt`` or ``c/dt`` (t or tau stands for tau)."""
    body = text.replace("tau", "t").replace(" ", "")
    err = FormatError(f"not a golden-field number: {text!r} (use forms like 3/2, t or 1-2/3t)")
    if not body:
        raise err
    p_txt, q_txt = body, None
    if body.endswith("t"):
        head = body[:-1]
        cut = max(head.rfind("+"), head.rfind("-"))
        if cut > 0:
            p_txt, q_txt = head[:cut], head[cut:]
        else:
            p_txt, q_txt = "", head
    try:
        p = Fraction(p_txt) if p_txt else Fraction(0)
        if q_txt is None:
            q = Fraction(0)
        elif q_txt in ("", "+", "-"):
            q = Fraction(-1 if q_txt == "-" else 1)
        else:
            q = Fraction(q_txt)
    except (ValueError, ZeroDivisionError):
        raise err from None
    return QTau(p, q)


def parse_cycint(text: str) -> CycInt:
    parts = [s for s in text.replace("[", "").replace("]", "").split(",")]
    if len(parts) != 4:
        raise FormatError(f"a cyclotomic integer needs four comma-separated integers, got {text!r}")
    try:
        return CycInt(*(int(s) for s in parts))
    except ValueError:
        raise FormatError(f"non-integer coefficient in {text!r}") from None


def parse_shift(text: str) -> tuple[QTau, QTau]:
    parts = text.split(",")
    if len(parts) != 2:
        raise FormatError(f"a shift needs two comma-separated values p,q, got {text!r}")
    return parse_qtau(parts[0]), parse_qtau(parts[1])
