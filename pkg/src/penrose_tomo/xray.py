"""Discrete parallel X-rays of finite subsets of Z[zeta_5]."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable

from .cyclotomic import CycInt, Direction, canonical_direction, embed, line_offset
from .qtau import SIN36_SQ, QTau


@dataclass(frozen=True)
class XRayData:
    """Line counts of a finite set along one direction.

    ``lines`` holds ``(offset, count)`` pairs, sorted by offset, counts >= 1.
    """

    direction: Direction
    lines: tuple[tuple[QTau, int], ...]

    def __post_init__(self) -> None:
        prev = None
        for off, n in self.lines:
            if not isinstance(n, int) or n < 1:
                raise ValueError(f"X-ray counts must be positive integers, got {n!r}")
            if prev is not None and not prev < off:
                raise ValueError(f"X-ray offsets must be strictly increasing ({prev} then {off})")
            prev = off

    @property
    def total(self) -> int:
        return sum(n for _, n in self.lines)

    @property
    def offsets(self) -> tuple[QTau, ...]:
        return tuple(off for off, _ in self.lines)

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(n for _, n in self.lines)

    def as_dict(self) -> dict[QTau, int]:
        return dict(self.lines)

    def to_json(self) -> dict:
        return {
            "direction": self.direction.to_json(),
            "lines": [{"offset": off.to_json(), "count": n} for off, n in self.lines],
        }


def xray(points: Iterable[CycInt], u) -> XRayData:
    u = canonical_direction(u)
    buckets = Counter(u.offset_parts(z) for z in points)
    lines = sorted(((QTau.raw(P, Q), n) for (P, Q), n in buckets.items()), key=lambda t: t[0])
    return XRayData(u, tuple(lines))


def xray_equal(x1: XRayData, x2: XRayData) -> bool:
    if x1.direction != x2.direction:
        raise ValueError("cannot compare X-rays taken in different directions")
    return x1.lines == x2.lines


def shifted(x: XRayData, t: CycInt) -> XRayData:
    """X-ray of the translate t + F, computed from the X-ray of F."""
    o = line_offset(t, x.direction)
    return XRayData(x.direction, tuple((off + o, n) for off, n in x.lines))


# -- files ------------------------------------------------------------------

class XRayFormatError(ValueError):
    pass


def from_json(data) -> XRayData:
    if not isinstance(data, dict) or "direction" not in data or "lines" not in data:
        raise XRayFormatError("an X-ray file needs 'direction' and 'lines'")
    try:
        vec = CycInt.from_json(data["direction"])
    except ValueError as exc:
        raise XRayFormatError(str(exc)) from None
    if not vec:
        raise XRayFormatError("X-ray direction must be nonzero")
    u = canonical_direction(vec)
    # offsets in the file refer to the vector as written
    scale = u.scale_of(vec)
    if not isinstance(data["lines"], list):
        raise XRayFormatError("'lines' must be a list")
    lines = []
    prev = None
    for entry in data["lines"]:
        if not isinstance(entry, dict) or "offset" not in entry or "count" not in entry:
            raise XRayFormatError(f"malformed X-ray line {entry!r}")
        try:
            off = QTau.from_json(entry["offset"])
        except ValueError as exc:
            raise XRayFormatError(str(exc)) from None
        n = entry["count"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise XRayFormatError(f"X-ray counts must be positive integers, got {n!r}")
        if prev is not None and not prev < off:
            raise XRayFormatError(f"X-ray offsets must be strictly increasing ({prev} then {off})")
        prev = off
        canon = off / scale
        if not u.is_reachable(canon):
            raise XRayFormatError(f"offset {off} is not met by any line through a cyclotomic integer")
        lines.append((canon, n))
    if scale.sign() < 0:
        lines.reverse()
    return XRayData(u, tuple(lines))


def load(path) -> XRayData:
    try:
        data = json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise XRayFormatError(f"{path}: no such file") from None
    except json.JSONDecodeError as exc:
        raise XRayFormatError(f"{path}: invalid JSON ({exc})") from None
    return from_json(data)


def dumps(x: XRayData) -> str:
    from .formats import dumps as _dumps

    return _dumps(x.to_json())


def save(x: XRayData, path) -> None:
    Path(path).write_text(dumps(x))


# -- statistics ---------------------------------------------------------------

def multiplicity_scan(points: Iterable[CycInt], vx, vy) -> int:
    """Largest number of points on one line parallel to the real vector (vx, vy).

    ``vx``, ``vy`` are rationals.  A point with coordinates (p, q sin(pi/5))
    lies on the line ``vy*x - vx*y = vy*p - vx*q*sin(pi/5)``; as sin(pi/5) is
    irrational over Q(tau) the pair ``(vy*p, vx*q)`` is an exact line key.
    If the vector is a real multiple of some cyclotomic integer this key
    over-separates, so rational directions of that kind must use
    :func:`xray` instead.
    """
    vx, vy = Fraction(vx), Fraction(vy)
    if vx == 0 and vy == 0:
        raise ValueError("direction vector must be nonzero")
    if _is_cyclotomic_direction(vx, vy):
        raise ValueError(f"({vx}, {vy}) is parallel to a cyclotomic integer; use xray()")
    keys = Counter()
    for z in points:
        pt = embed(z)
        keys[(pt.p * vy, pt.q * vx)] += 1
    return max(keys.values(), default=0)


def _is_cyclotomic_direction(vx: Fraction, vy: Fraction) -> bool:
    # (vx, vy) = lambda (p, q s) needs vy/vx = (q/p) s; with p, q in Q(tau)
    # and s irrational over Q(tau) this happens only for vx = 0 or vy = 0.
    return vx == 0 or vy == 0


def line_density(points: Iterable[CycInt], u) -> dict:
    """Points-per-line histogram and line spacings along a direction."""
    x = xray(points, u)
    hist = Counter(x.counts)
    length = float(embed(x.direction.representative).norm2()) ** 0.5
    s = float(SIN36_SQ) ** 0.5
    offs = [float(o) * s / length for o in x.offsets]
    gaps = [b - a for a, b in zip(offs, offs[1:])]
    return {
        "direction": x.direction.to_json(),
        "lines": len(x.lines),
        "points": x.total,
        "max_per_line": max(x.counts, default=0),
        "mean_per_line": x.total / len(x.lines) if x.lines else 0.0,
        "per_line_histogram": {str(k): hist[k] for k in sorted(hist)},
        "min_spacing": min(gaps, default=0.0),
        "max_spacing": max(gaps, default=0.0),
        "mean_spacing": sum(gaps) / len(gaps) if gaps else 0.0,
    }
