"""Independent reference computations used by the tests.

Nothing here reuses the package's exact predicates: values are evaluated
numerically at 256 bits, or searched exhaustively.
"""

from __future__ import annotations

import itertools

import mpmath
import numpy as np

PREC = 256


def zeta_powers():
    with mpmath.workprec(PREC):
        z = mpmath.exp(2j * mpmath.pi / 5)
        return [z**k for k in range(5)]


_Z = zeta_powers()
with mpmath.workprec(PREC):
    TAU = (1 + mpmath.sqrt(5)) / 2


def value(z):
    """High-precision complex value of a cyclotomic number (CycInt or CycRat)."""
    with mpmath.workprec(PREC):
        return sum((mpmath.mpf(c.numerator) / c.denominator if hasattr(c, "numerator") else mpmath.mpf(c)) * _Z[j]
                   for j, c in enumerate(z.c))


def galois_value(z, m):
    with mpmath.workprec(PREC):
        return sum(mpmath.mpf(int(c)) * _Z[(j * m) % 5] for j, c in enumerate(z.c))


def qvalue(x):
    with mpmath.workprec(PREC):
        return mpmath.mpf(x.p.numerator) / x.p.denominator + mpmath.mpf(x.q.numerator) / x.q.denominator * TAU


def msign(v, eps=mpmath.mpf(10) ** -60):
    if abs(v) < eps:
        return 0
    return 1 if v > 0 else -1


def cross_value(a, b):
    with mpmath.workprec(PREC):
        va, vb = value(a), value(b)
        return va.real * vb.imag - va.imag * vb.real


def window_area_fractions():
    """Area shares of P, tau P, tau P, P from the pentagon vertices."""
    with mpmath.workprec(PREC):
        verts = _Z
        area = mpmath.mpf(0)
        for k in range(5):
            a, b = verts[k], verts[(k + 1) % 5]
            area += (a.real * b.imag - a.imag * b.real) / 2
        small, large = area, area * TAU**2
        total = 2 * small + 2 * large
        return [float(x / total) for x in (small, large, large, small)]


def subset_bits(n: int) -> np.ndarray:
    """All 2**n subsets of range(n) as a boolean matrix."""
    idx = np.arange(1 << n, dtype=np.int64)
    return ((idx[:, None] >> np.arange(n)) & 1).astype(bool)


def transport_solutions(cells, rdem, cdem):
    """All subsets of ``cells`` ((row, col) pairs) with the given margins."""
    n = len(cells)
    bits = subset_bits(n)
    R = np.zeros((n, len(rdem)), dtype=np.int64)
    C = np.zeros((n, len(cdem)), dtype=np.int64)
    for k, (i, j) in enumerate(cells):
        R[k, i] = 1
        C[k, j] = 1
    ok = np.all(bits @ R == np.array(rdem), axis=1) & np.all(bits @ C == np.array(cdem), axis=1)
    return [frozenset(cells[k] for k in np.nonzero(row)[0]) for row in bits[ok]]


def float_convex(subset, points, eps=1e-9):
    """Float hull containment test with a tolerance guard."""
    sub = [complex(value(z)) for z in subset]
    if len(sub) <= 1:
        return True
    others = [complex(value(z)) for z in points if z not in set(subset)]

    def inside(p):
        pts = np.array([[s.real, s.imag] for s in sub])
        # p lies in the hull iff it is not strictly separated by any line
        # through two subset points with all subset points on one side
        for a, b in itertools.permutations(range(len(sub)), 2):
            d = pts[b] - pts[a]
            side = d[0] * (pts[:, 1] - pts[a, 1]) - d[1] * (pts[:, 0] - pts[a, 0])
            if np.all(side >= -eps):
                val = d[0] * (p.imag - pts[a, 1]) - d[1] * (p.real - pts[a, 0])
                if val < -eps:
                    return False
        # collinear subsets: stay within the segment bounding box
        if all(abs(c) < eps for c in [
            (pts[b] - pts[0])[0] * (pts[c] - pts[0])[1] - (pts[b] - pts[0])[1] * (pts[c] - pts[0])[0]
            for b in range(len(sub)) for c in range(len(sub))
        ]):
            lo, hi = pts.min(axis=0) - eps, pts.max(axis=0) + eps
            return bool(lo[0] <= p.real <= hi[0] and lo[1] <= p.imag <= hi[1])
        return True

    return not any(inside(o) for o in others)


_SIN36 = float(mpmath.sin(mpmath.pi / 5))
_ZF = np.exp(2j * np.pi * np.arange(5) / 5)
_TAUF = (1 + 5**0.5) / 2
_SCALES = {1: 1.0, 2: -_TAUF, 3: _TAUF, 4: -1.0}


def _mp_member(a, radius, spec):
    """256-bit check of one coefficient vector; returns (inside, on_boundary)."""
    with mpmath.workprec(PREC):
        z = sum(int(c) * _Z[j] for j, c in enumerate(a))
        y = sum(int(c) * _Z[(2 * j) % 5] for j, c in enumerate(a))
        r = mpmath.mpf(radius)
        if abs(z) ** 2 > r * r:
            return False, False
        j = (sum(int(c) for c in a) - spec.class_rotation) % 5
        if j == 0:
            return False, False
        w = mpmath.mpc(qvalue(spec.shift.p), qvalue(spec.shift.q) * mpmath.sin(mpmath.pi / 5))
        s = {1: 1, 2: -TAU, 3: TAU, 4: -1}[j]
        v = [s * _Z[k] for k in range(5)]
        d = y - w
        worst = min(
            (v[(k + 1) % 5] - v[k]).real * (d - v[k]).imag - (v[(k + 1) % 5] - v[k]).imag * (d - v[k]).real
            for k in range(5)
        )
        return worst > 0, abs(worst) < mpmath.mpf(10) ** -50


def brute_patch(radius, spec, box: int):
    """Model-set points within ``radius`` by scanning every coefficient vector in a box."""
    from penrose_tomo.cyclotomic import CycInt

    rng = np.arange(-box, box + 1)
    A = np.stack(np.meshgrid(rng, rng, rng, rng, indexing="ij"), -1).reshape(-1, 4)
    z = A @ _ZF[:4]
    keep = np.abs(z) ** 2 <= radius * radius + 1e-6
    A, z = A[keep], z[keep]
    y = A @ _ZF[[0, 2, 4, 1]]
    j = (A.sum(axis=1) - spec.class_rotation) % 5
    w = complex(float(spec.shift.p), float(spec.shift.q) * _SIN36)
    s = np.array([0.0, *(_SCALES[k] for k in range(1, 5))])[j]
    d = y - w
    worst = np.full(len(A), np.inf)
    for k in range(5):
        v0, v1 = s * _ZF[k], s * _ZF[(k + 1) % 5]
        e = v1 - v0
        worst = np.minimum(worst, e.real * (d - v0).imag - e.imag * (d - v0).real)
    worst[j == 0] = -np.inf
    near_disk = np.abs(np.abs(z) ** 2 - radius * radius) < 1e-6
    doubtful = (np.abs(worst) < 1e-9) | near_disk
    out = set()
    for a, ok in zip(A[~doubtful], worst[~doubtful] > 0):
        if ok:
            out.add(CycInt(*(int(c) for c in a)))
    for a in A[doubtful]:
        inside, boundary = _mp_member(a, radius, spec)
        if boundary:
            raise AssertionError(f"point {a} on the window boundary")
        if inside:
            out.add(CycInt(*(int(c) for c in a)))
    return out


def float_line_multiplicity(points, vx: float, vy: float, tol: float = 1e-9) -> int:
    """Largest number of points on one line parallel to (vx, vy), by float projection."""
    xy = np.array([complex(value(z)) for z in points])
    key = np.sort(xy.real * vy - xy.imag * vx)
    best, run = 1, 1
    for a, b in zip(key, key[1:]):
        run = run + 1 if b - a < tol else 1
        best = max(best, run)
    return best


def float_xray(points, u):
    """Counts per line from float projections onto the normal of u."""
    w = complex(value(u.representative))
    n = complex(-w.imag, w.real) / abs(w)
    proj = sorted(
        (complex(value(z)).real * n.real + complex(value(z)).imag * n.imag) for z in points
    )
    counts = []
    for a, b in zip([None] + proj, proj):
        if a is not None and b - a < 1e-9:
            counts[-1] += 1
        else:
            counts.append(1)
    return counts
