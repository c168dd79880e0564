"""Exact convex-polygon operations on :class:`PlaneCoord` points.

All polygons are lists of vertices in counter-clockwise order.  Working in
``(p, q)`` coordinates is legitimate because ``(x, y) -> (x, y / sin(pi/5))``
is linear with positive determinant: it preserves convexity, incidence and
orientation.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .cyclotomic import PlaneCoord, cross, orient
from .qtau import ZERO, QTau

Polygon = list  # list[PlaneCoord], CCW


def area2(poly: Sequence[PlaneCoord]) -> QTau:
    """Twice the signed area in (p, q) units (positive for CCW)."""
    n = len(poly)
    total = ZERO
    for i in range(n):
        total = total + cross(poly[i], poly[(i + 1) % n])
    return total


def has_interior(poly: Sequence[PlaneCoord]) -> bool:
    return len(poly) >= 3 and area2(poly).sign() > 0


def clip(poly: Sequence[PlaneCoord], a: PlaneCoord, b: PlaneCoord) -> Polygon:
    """Part of ``poly`` on the closed left side of the directed line a->b."""
    if not poly:
        return []
    d = b - a
    side = [cross(d, v - a) for v in poly]
    signs = [s.sign() for s in side]
    if all(s >= 0 for s in signs):
        return list(poly)
    if all(s <= 0 for s in signs):
        return [v for v, s in zip(poly, signs) if s == 0]
    out: Polygon = []
    n = len(poly)
    for i in range(n):
        j = (i + 1) % n
        vi, si = poly[i], signs[i]
        if si >= 0:
            out.append(vi)
        sj = signs[j]
        if si * sj < 0:
            t = side[i] / (side[i] - side[j])
            vj = poly[j]
            out.append(PlaneCoord(vi.p + (vj.p - vi.p) * t, vi.q + (vj.q - vi.q) * t))
    return _dedupe(out)


def _dedupe(poly: Polygon) -> Polygon:
    out: Polygon = []
    for v in poly:
        if not out or out[-1] != v:
            out.append(v)
    if len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return out


def intersect(poly: Sequence[PlaneCoord], other: Sequence[PlaneCoord]) -> Polygon:
    out = list(poly)
    n = len(other)
    for i in range(n):
        out = clip(out, other[i], other[(i + 1) % n])
        if not out:
            break
    return out


def subtract(poly: Sequence[PlaneCoord], other: Sequence[PlaneCoord]) -> list[Polygon]:
    """Convex pieces covering ``poly`` minus the interior of the convex ``other``.

    Pieces without interior are dropped.
    """
    pieces = []
    rest = list(poly)
    n = len(other)
    for i in range(n):
        a, b = other[i], other[(i + 1) % n]
        outside = clip(rest, b, a)
        if has_interior(outside):
            pieces.append(outside)
        rest = clip(rest, a, b)
        if not has_interior(rest):
            break
    return pieces


def locate(pt: PlaneCoord, poly: Sequence[PlaneCoord]) -> int:
    """+1 strictly inside, 0 on the boundary, -1 outside (convex CCW poly)."""
    n = len(poly)
    on_edge = False
    for i in range(n):
        s = orient(poly[i], poly[(i + 1) % n], pt)
        if s < 0:
            return -1
        if s == 0:
            on_edge = True
    return 0 if on_edge else 1


def centroid(poly: Sequence[PlaneCoord]) -> PlaneCoord:
    n = len(poly)
    p = ZERO
    q = ZERO
    for v in poly:
        p = p + v.p
        q = q + v.q
    inv = QTau(1) / n
    return PlaneCoord(p * inv, q * inv)


def weighted_point(poly: Sequence[PlaneCoord], weights: Sequence[int]) -> PlaneCoord:
    total = sum(weights)
    p = ZERO
    q = ZERO
    for v, w in zip(poly, weights):
        p = p + v.p * w
        q = q + v.q * w
    inv = QTau(1) / total
    return PlaneCoord(p * inv, q * inv)


def convex_hull(points: Iterable[PlaneCoord]) -> Polygon:
    """Strictly convex hull (collinear points dropped), CCW, monotone chain."""
    pts = sorted(set(points), key=lambda v: (v.p, v.q))
    if len(pts) <= 2:
        return pts
    lower: Polygon = []
    for v in pts:
        while len(lower) >= 2 and orient(lower[-2], lower[-1], v) <= 0:
            lower.pop()
        lower.append(v)
    upper: Polygon = []
    for v in reversed(pts):
        while len(upper) >= 2 and orient(upper[-2], upper[-1], v) <= 0:
            upper.pop()
        upper.append(v)
    hull = lower[:-1] + upper[:-1]
    return hull


def in_closed_hull(pt: PlaneCoord, hull: Sequence[PlaneCoord]) -> bool:
    """Membership in the closed convex hull described by ``convex_hull`` output."""
    if len(hull) == 0:
        return False
    if len(hull) == 1:
        return pt == hull[0]
    if len(hull) == 2:
        a, b = hull
        if orient(a, b, pt) != 0:
            return False
        d = b - a
        t1 = (pt - a).p * d.p + (pt - a).q * d.q
        t2 = (b - pt).p * d.p + (b - pt).q * d.q
        # dot products in (p, q) units keep their sign along a fixed line
        return t1.sign() >= 0 and t2.sign() >= 0
    return locate(pt, hull) >= 0


def bbox(poly: Sequence[PlaneCoord]) -> tuple[float, float, float, float]:
    ps = [float(v.p) for v in poly]
    qs = [float(v.q) for v in poly]
    return (min(ps), min(qs), max(ps), max(qs))
