"""Penrose model sets: windows, membership, patch generation and fitting.

A model set is parametrised by a :class:`WindowSpec` ``(shift w, class
rotation c)``.  A cyclotomic integer z belongs to it iff, with
``j = class(z) - c (mod 5)``, we have ``j != 0`` and ``sigma2(z) - w`` lies in
the open pentagon ``W(j)``: ``P, -tau P, tau P, -P`` for j = 1..4, with P the
convex hull of the fifth roots of unity.  This labelling is the one for which
unit-distance pairs span a rhombus tiling; swapping the two reflected
pentagons breaks that.  Translating
a model set by ``t`` in Z[zeta] only moves ``(w, c)`` to
``(w + sigma2(t), c + class(t))``, so window specs cover every translate that
keeps points inside Z[zeta].
"""

from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import geometry
from .cyclotomic import (
    ZETA,
    CycInt,
    PlaneCoord,
    StarPoint,
    conj,
    embed,
    embed_internal,
    imag_coeff,
    star,
    unembed,
)
from .qtau import ONE, SQRT5, TAU, QTau, zt_divides, zt_gcd


class Membership(enum.Enum):
    IN = "in"
    OUT = "out"
    BOUNDARY = "boundary"


class NonGenericShift(ValueError):
    """A point's star image lies on the boundary of the shifted window."""

    def __init__(self, point: CycInt, spec: "WindowSpec") -> None:
        self.point = point
        self.spec = spec
        super().__init__(
            f"window shift {spec.shift_str()} (class rotation {spec.class_rotation}) "
            f"is not generic: star image of {list(point.c)} lies on the window boundary"
        )


def _window_vertices(j: int) -> tuple[CycInt, ...]:
    scale = {1: CycInt(1), 2: CycInt(0, 0, 1, 1), 3: CycInt(0, 0, -1, -1), 4: CycInt(-1)}[j]
    return tuple(scale * (ZETA**k) for k in range(5))


#: vertices (as cyclotomic integers) of W(1)=P, W(2)=-tau P, W(3)=tau P, W(4)=-P
WINDOW_VERTICES = {j: _window_vertices(j) for j in range(1, 5)}
WINDOW_POLYGONS = {j: [embed(v) for v in vs] for j, vs in WINDOW_VERTICES.items()}

# bounding box of the union of the four pentagons, p in [-tau, tau], q in [-tau^2, tau^2]
_P_MIN, _P_MAX = -TAU, TAU
_Q_MIN, _Q_MAX = -(TAU * TAU), TAU * TAU
# rational upper bound of 1 / sin(pi/5) = 1.7013016...
_INV_SIN36_UPPER = Fraction(170131, 100000)


@dataclass(frozen=True)
class WindowSpec:
    shift: PlaneCoord
    class_rotation: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "class_rotation", self.class_rotation % 5)

    @classmethod
    def of(cls, p, q, c: int = 0) -> WindowSpec:
        return cls(PlaneCoord.of(p, q), c)

    def shift_str(self) -> str:
        return f"(p={self.shift.p}, q={self.shift.q})"

    def to_json(self) -> dict:
        return {"shift": self.shift.to_json(), "class_rotation": self.class_rotation}

    @classmethod
    def from_json(cls, data) -> WindowSpec:
        if not isinstance(data, dict) or "shift" not in data:
            raise ValueError(f"malformed window spec {data!r}")
        c = data.get("class_rotation", 0)
        if not isinstance(c, int) or isinstance(c, bool):
            raise ValueError(f"class_rotation must be an integer, got {c!r}")
        return cls(PlaneCoord.from_json(data["shift"]), c)


DEFAULT_SPEC = WindowSpec.of(Fraction(1, 7), Fraction(1, 11), 0)


def window_index(class_index: int, spec: WindowSpec) -> int:
    return (class_index - spec.class_rotation) % 5


def window_membership(sp: StarPoint, spec: WindowSpec) -> Membership:
    j = window_index(sp.class_index, spec)
    if j == 0:
        return Membership.OUT
    v = embed(sp.internal) - spec.shift
    loc = geometry.locate(v, WINDOW_POLYGONS[j])
    if loc > 0:
        return Membership.IN
    if loc < 0:
        return Membership.OUT
    return Membership.BOUNDARY


def pms_member(z: CycInt, spec: WindowSpec = DEFAULT_SPEC) -> bool:
    m = window_membership(star(z), spec)
    if m is Membership.BOUNDARY:
        raise NonGenericShift(z, spec)
    return m is Membership.IN


def is_generic(spec: WindowSpec) -> bool:
    """Exact test that no star image of Z[zeta] meets the shifted window boundary.

    For an edge line ``w + A + R d`` the star images y of class r on it satisfy
    ``Im((y - w - A) conj(d)) = 0``; writing ``y = r + (1 - zeta) x`` this is a
    congruence modulo the Z[tau]-ideal generated by the imaginary parts of
    ``(1 - zeta) conj(d)`` and ``(1 - zeta) zeta conj(d)``.  The images are
    dense on such a line whenever one exists, so the line test is exact.
    """
    w = unembed(spec.shift)
    one_minus_zeta = CycInt(1, -1, 0, 0)
    for j in range(1, 5):
        r = (j + spec.class_rotation) % 5
        verts = WINDOW_VERTICES[j]
        for k in range(5):
            a, b = verts[k], verts[(k + 1) % 5]
            dbar = conj(b - a)
            rho = imag_coeff((w + a) * dbar)
            target = rho - imag_coeff(dbar) * r
            if not target.is_integral():
                continue
            g = zt_gcd(imag_coeff(one_minus_zeta * dbar), imag_coeff(one_minus_zeta * ZETA * dbar))
            if zt_divides(g, target):
                return False
    return True


@dataclass(frozen=True)
class Patch:
    spec: WindowSpec
    radius: QTau
    points: tuple[CycInt, ...]
    _index: frozenset = field(default=frozenset(), compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_index", frozenset(self.points))

    def __contains__(self, z) -> bool:
        return z in self._index

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def within(self, radius) -> list[CycInt]:
        radius = QTau.coerce(radius)
        if not radius < self.radius:
            return list(self.points)
        r2 = radius**2
        return [z for z in self.points if embed(z).norm2() <= r2]


# -- vectorised exact predicates -------------------------------------------

_SAFE = 1 << 30


def _as_array(values: list[int]) -> np.ndarray:
    if values and max(abs(v) for v in values) >= _SAFE:
        return np.array(values, dtype=object)
    return np.array(values, dtype=np.int64)


def zt_sign_array(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Exact elementwise sign of X + Y*tau for integer arrays."""
    if X.dtype != object:
        lim = max(int(np.abs(X).max(initial=0)), int(np.abs(Y).max(initial=0)))
        if lim >= _SAFE:
            X = X.astype(object)
            Y = Y.astype(object)
    a = 2 * X + Y
    b = Y
    sa = np.sign(a).astype(np.int64)
    sb = np.sign(b).astype(np.int64)
    lhs = a * a
    rhs = 5 * b * b
    mixed = np.where(lhs > rhs, sa, np.where(lhs < rhs, sb, 0))
    return np.where(sa * sb >= 0, np.where(sa != 0, sa, sb), mixed).astype(np.int64)


def _integer_form(coeffs: Sequence[QTau], const: QTau) -> tuple[list, list, int, int]:
    """Scale ``sum a_i coeffs_i - const`` to integer (P, Q) forms."""
    L = 1
    for c in list(coeffs) + [const]:
        d = c.parts[2]
        L = L * d // math.gcd(L, d)
    kp = [c.parts[0] * (L // c.parts[2]) for c in coeffs]
    kq = [c.parts[1] * (L // c.parts[2]) for c in coeffs]
    cp = const.parts[0] * (L // const.parts[2])
    cq = const.parts[1] * (L // const.parts[2])
    return kp, kq, cp, cq


_BASIS = [CycInt.of(e) for e in ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))]
_INT_P = [embed_internal(e).p for e in _BASIS]
_INT_Q = [embed_internal(e).q for e in _BASIS]


def _edge_forms(spec: WindowSpec) -> dict[int, list]:
    """Per window component, integer linear forms of the five edge brackets."""
    forms = {}
    w = spec.shift
    for j, poly in WINDOW_POLYGONS.items():
        edges = []
        for k in range(5):
            a, b = poly[k], poly[(k + 1) % 5]
            d = b - a
            coeffs = [d.p * sq - d.q * sp for sp, sq in zip(_INT_P, _INT_Q)]
            const = d.p * w.q - d.q * w.p + (d.p * a.q - d.q * a.p)
            edges.append(_integer_form(coeffs, const))
        forms[j] = edges
    return forms


def membership_array(A: np.ndarray, spec: WindowSpec) -> np.ndarray:
    """Exact window status for rows of coefficients: 1 in, 0 boundary, -1 out."""
    n = A.shape[0]
    status = np.full(n, -1, dtype=np.int64)
    if n == 0:
        return status
    cls = (A.sum(axis=1) - spec.class_rotation) % 5
    forms = _edge_forms(spec)
    for j in range(1, 5):
        idx = np.nonzero(cls == j)[0]
        if idx.size == 0:
            continue
        sub = A[idx]
        lo = np.full(idx.size, 1, dtype=np.int64)
        for kp, kq, cp, cq in forms[j]:
            X = sub @ _as_array(kp) - cp
            Y = sub @ _as_array(kq) - cq
            lo = np.minimum(lo, zt_sign_array(X, Y))
        status[idx] = lo
    return status


def disk_mask(A: np.ndarray, radius: QTau) -> np.ndarray:
    """Exact test |embed(z)| <= radius for rows of coefficients."""
    a0, a1, a2, a3 = (A[:, i] for i in range(4))
    X1 = 2 * a0 - a1
    Y1 = a1 - a2 - a3
    X2 = a2 - a3
    Y2 = a1
    m1 = X1 * X1 + Y1 * Y1
    n1 = 2 * X1 * Y1 + Y1 * Y1
    m2 = X2 * X2 + Y2 * Y2
    n2 = 2 * X2 * Y2 + Y2 * Y2
    # 4|z|^2 = (2 p)^2 + q^2 (3 - tau)
    P4 = m1 + 3 * m2 - n2
    Q4 = n1 + 2 * n2 - m2
    R2 = radius * radius * 4
    RP, RQ, RD = R2.parts
    return zt_sign_array(RD * P4 - RP, RD * Q4 - RQ) <= 0


def _candidate_box(radius: QTau, spec: WindowSpec) -> np.ndarray:
    """Every z with |z| <= radius whose star image lies in the window bounding box.

    The box follows from exact linear relations between the coefficients and
    the physical/internal coordinates; bounds are QTau values rounded outward.
    """
    wp, wq = spec.shift.p, spec.shift.q
    tau2 = TAU * TAU
    denom = ONE + tau2
    rs = radius * QTau(_INV_SIN36_UPPER)  # >= radius / sin(pi/5) >= |q| of any point in the disk
    d_lo = ((-rs) - TAU * (wq + _Q_MAX)) / denom
    d_hi = (rs - TAU * (wq + _Q_MIN)) / denom
    two_over_sqrt5 = SQRT5 * QTau(Fraction(2, 5))
    half = QTau(Fraction(1, 2))
    rows = []
    for d in range(d_lo.floor(), d_hi.ceil() + 1):
        lo1 = (wq + _Q_MIN + TAU * d).ceil()
        hi1 = (wq + _Q_MAX + TAU * d).floor()
        for a1 in range(lo1, hi1 + 1):
            zq = QTau(d) + a1 * TAU  # physical q = a2 - a3 + a1 tau
            if abs(zq) > rs:
                continue
            e_lo = (-(two_over_sqrt5 * (radius - wp - _P_MIN)) + a1).ceil()
            e_hi = (two_over_sqrt5 * (radius + wp + _P_MAX) + a1).floor()
            if (e_lo - d) % 2:
                e_lo += 1
            base_lo = wp + _P_MIN + TAU * half * a1
            base_hi = wp + _P_MAX + TAU * half * a1
            shift_e = (TAU - ONE) * half
            for e in range(e_lo, e_hi + 1, 2):
                a2 = (d + e) // 2
                a3 = (e - d) // 2
                off = shift_e * e
                lo0 = (base_lo - off).ceil()
                hi0 = (base_hi - off).floor()
                for a0 in range(lo0, hi0 + 1):
                    rows.append((a0, a1, a2, a3))
    if not rows:
        return np.zeros((0, 4), dtype=np.int64)
    flat = [v for r in rows for v in r]
    return _as_array(flat).reshape(-1, 4)


def generate_patch(radius, spec: WindowSpec = DEFAULT_SPEC) -> Patch:
    """All points of the model set within the closed disk of the given radius."""
    radius = QTau.coerce(radius)
    if radius.sign() <= 0:
        raise ValueError("patch radius must be positive")
    A = _candidate_box(radius, spec)
    inside = disk_mask(A, radius)
    A = A[inside]
    status = membership_array(A, spec)
    bad = np.nonzero(status == 0)[0]
    if bad.size:
        offenders = sorted(CycInt.of(int(v) for v in A[i]) for i in bad)
        raise NonGenericShift(offenders[0], spec)
    pts = sorted(CycInt.of(int(v) for v in row) for row in A[status == 1])
    return Patch(spec, radius, tuple(pts))


def class_frequencies(points: Iterable[CycInt], spec: WindowSpec = DEFAULT_SPEC) -> dict[int, float]:
    counts = Counter(window_index(z.class_index, spec) for z in points)
    total = sum(counts.values())
    return {j: counts.get(j, 0) / total if total else 0.0 for j in range(1, 5)}


# -- the "contained in some PMS" oracle --------------------------------------

@dataclass(frozen=True)
class FitWitness:
    class_rotation: int
    polygon: tuple[PlaneCoord, ...]

    def spec(self) -> WindowSpec:
        return interior_generic_spec(self.polygon, self.class_rotation)


def _shift_region(z: CycInt, c: int) -> list[PlaneCoord] | None:
    """Shifts w for which z is in the model set: sigma2(z) - W(j), CCW."""
    j = (z.class_index - c) % 5
    if j == 0:
        return None
    s = embed_internal(z)
    return [s - v for v in WINDOW_POLYGONS[j]]


def shift_region(z: CycInt, c: int) -> list[PlaneCoord] | None:
    return _shift_region(z, c)


def fit_some_pms(points: Iterable[CycInt]) -> FitWitness | None:
    """First class rotation c whose shift region for all points has interior."""
    pts = sorted(set(points))
    if not pts:
        raise ValueError("fit_some_pms needs a nonempty point set")
    classes = {z.class_index for z in pts}
    for c in range(5):
        if c in classes:
            continue
        region = _shift_region(pts[0], c)
        for z in pts[1:]:
            region = geometry.intersect(region, _shift_region(z, c))
            if not geometry.has_interior(region):
                break
        if geometry.has_interior(region):
            return FitWitness(c, tuple(region))
    return None


_WEIGHT_TRIALS = [None, (1, 2), (2, 3, 5), (3, 1, 4, 1, 5), (7, 11, 13), (17, 19, 23, 29)]


def interior_generic_spec(polygon: Sequence[PlaneCoord], c: int) -> WindowSpec:
    """A generic window spec whose shift is strictly inside ``polygon``."""
    n = len(polygon)
    for trial in _WEIGHT_TRIALS + [tuple(range(1, k + 3)) for k in range(20)]:
        if trial is None:
            w = geometry.centroid(polygon)
        else:
            weights = [trial[i % len(trial)] * (i + 1) for i in range(n)]
            w = geometry.weighted_point(polygon, weights)
        spec = WindowSpec(w, c)
        if is_generic(spec):
            return spec
    raise RuntimeError("no generic interior point found")  # pragma: no cover


# -- tiling structure --------------------------------------------------------

_UNIT_VECTORS = [ZETA**k for k in range(5)] + [-(ZETA**k) for k in range(5)]
# angle of each unit vector in multiples of 36 degrees
_UNIT_ANGLE = {v: (2 * k) % 10 for k, v in enumerate(_UNIT_VECTORS[:5])}
_UNIT_ANGLE.update({v: (2 * k + 5) % 10 for k, v in enumerate(_UNIT_VECTORS[5:])})
_ANGLE_UNIT = {a: v for v, a in _UNIT_ANGLE.items()}


def tiling_edges(points: Iterable[CycInt]) -> list[tuple[CycInt, CycInt]]:
    """All unordered pairs at distance exactly 1.

    Units of modulus one in Z[zeta] are the tenth roots of unity, so the
    neighbours of z are found among z + (+-zeta^k).
    """
    pts = points.points if isinstance(points, Patch) else tuple(points)
    index = set(pts)
    edges = []
    for z in sorted(index):
        for e in _UNIT_VECTORS:
            w = z + e
            if w in index and z < w:
                edges.append((z, w))
    return edges


def tiling_faces(points: Iterable[CycInt]) -> list[tuple[CycInt, ...]]:
    """Bounded faces of the unit-distance graph, each as a CCW vertex cycle."""
    pts = points.points if isinstance(points, Patch) else tuple(points)
    index = set(pts)
    nbr_angles = {z: sorted(_UNIT_ANGLE[e] for e in _UNIT_VECTORS if z + e in index) for z in index}
    seen = set()
    faces = []
    for a in sorted(index):
        for ang in nbr_angles[a]:
            if (a, ang) in seen:
                continue
            cycle = []
            cur, cur_ang = a, ang
            while (cur, cur_ang) not in seen:
                seen.add((cur, cur_ang))
                cycle.append(cur)
                nxt = cur + _ANGLE_UNIT[cur_ang]
                back = (cur_ang + 5) % 10
                angles = nbr_angles[nxt]
                # next edge clockwise from the reversed direction
                cand = [x for x in angles if x != back]
                if not cand:
                    cur, cur_ang = nxt, back
                    continue
                cur_ang = min(cand, key=lambda x: (back - x) % 10)
                cur = nxt
            poly = [embed(z) for z in cycle]
            if len(cycle) >= 3 and geometry.area2(poly).sign() > 0:
                faces.append(tuple(cycle))
    return faces


def rhombus_class(face: Sequence[CycInt]) -> tuple[QTau, QTau] | None:
    """Sorted squared diagonal lengths of a four-vertex face."""
    if len(face) != 4:
        return None
    d1 = embed(face[2] - face[0]).norm2()
    d2 = embed(face[3] - face[1]).norm2()
    return (d1, d2) if d1 <= d2 else (d2, d1)


THICK = (QTau(3, -1), QTau(1, 1))  # 3 - tau, 1 + tau
THIN = (QTau(2, -1), QTau(2, 1))  # 2 - tau, 2 + tau
