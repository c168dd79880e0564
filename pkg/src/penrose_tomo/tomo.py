"""Consistency, reconstruction and uniqueness from two X-rays.

Every set with X-rays ``(p1, p2)`` lives on the candidate grid: the integral
intersections of the support lines.  With unit capacity per cell, a solution
is exactly a 0/1 transportation plan with row sums ``p1`` and column sums
``p2``; everything reduces to maximum flow and alternating cycles.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, maximum_flow

from . import geometry
from .cyclotomic import CycInt, Direction, PlaneCoord, ZETA, from_pair, imag_coeff
from .modelset import (
    WINDOW_POLYGONS,
    WindowSpec,
    interior_generic_spec,
    pms_member,
    shift_region,
)
from .qtau import QTau
from .xray import XRayData, xray


class InfeasibleError(Exception):
    """No set has the requested X-rays (under the admissibility constraint)."""


@dataclass(frozen=True)
class CandidateGrid:
    u1: Direction
    u2: Direction
    rows: tuple[QTau, ...]
    cols: tuple[QTau, ...]
    cells: dict  # (i, j) -> CycInt
    allowed: frozenset  # of (i, j)

    @property
    def directions(self) -> tuple[Direction, Direction]:
        return (self.u1, self.u2)

    def allowed_cells(self) -> list[tuple[int, int]]:
        return sorted(self.allowed)

    def restrict(self, allowed: Iterable[tuple[int, int]]) -> CandidateGrid:
        allowed = frozenset(allowed)
        if not allowed <= set(self.cells):
            raise ValueError("restricted cells must belong to the grid")
        return CandidateGrid(self.u1, self.u2, self.rows, self.cols, self.cells, allowed)

    def point_set(self, cells: Iterable[tuple[int, int]]) -> list[CycInt]:
        return sorted(self.cells[c] for c in cells)


@dataclass(frozen=True)
class Solution:
    points: tuple[CycInt, ...]
    provenance: str = "reconstruct"
    spec: WindowSpec | None = None

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class UniquenessResult:
    unique: bool
    witness: tuple[CycInt, ...] | None = None


# -- grid construction -------------------------------------------------------

def _zt_mul(a, b):
    # (a0 + a1 t)(b0 + b1 t) with t^2 = t + 1, elementwise on arrays
    return a[0] * b[0] + a[1] * b[1], a[0] * b[1] + a[1] * b[0] + a[1] * b[1]


def _parts(x: QTau) -> tuple[int, int]:
    if not x.is_integral():
        raise ValueError(f"X-ray offset {x} is not in Z[tau]")
    return x.parts[:2]


def _integral_cells(rows, cols, u1: Direction, u2: Direction):
    """Indices ``(i, j)`` and points of the integral row/column intersections."""
    c0 = imag_coeff(u1._conj)
    c1 = imag_coeff(ZETA * u1._conj)
    d0 = imag_coeff(u2._conj)
    d1 = imag_coeff(ZETA * u2._conj)
    det = c0 * d1 - c1 * d0
    if det.is_zero():
        raise ValueError("X-ray directions must not be parallel")
    n = det.norm()
    assert n.denominator == 1
    n = abs(int(n))
    cdet = _parts(det.conj() * (1 if det.norm() > 0 else -1))
    R = [_parts(o) for o in rows]
    C = [_parts(o) for o in cols]
    big = max([abs(v) for pair in R + C for v in pair] + [abs(v) for v in cdet + _parts(c0) + _parts(c1) + _parts(d0) + _parts(d1)] + [n, 1])
    dtype = np.int64 if big < (1 << 12) else object
    r = np.array(R, dtype=dtype).reshape(-1, 2)
    c = np.array(C, dtype=dtype).reshape(-1, 2)
    o1 = (r[:, 0][:, None], r[:, 1][:, None])
    o2 = (c[:, 0][None, :], c[:, 1][None, :])

    def lin(x, y, a, b):
        # x*a - y*b, with a, b constants in Z[tau]
        xa = _zt_mul(x, _parts(a))
        yb = _zt_mul(y, _parts(b))
        return xa[0] - yb[0], xa[1] - yb[1]

    X = lin(o1, o2, d1, c1)  # o1 d1 - c1 o2
    Y = lin(o2, o1, c0, d0)  # c0 o2 - o1 d0
    XA = _zt_mul(X, cdet)
    YB = _zt_mul(Y, cdet)
    ok = (XA[0] % n == 0) & (XA[1] % n == 0) & (YB[0] % n == 0) & (YB[1] % n == 0)
    ok = np.broadcast_to(ok, (len(R), len(C)))
    out = {}
    for i, j in zip(*np.nonzero(ok)):
        i, j = int(i), int(j)
        A = QTau.raw(int(XA[0][i, j]) // n, int(XA[1][i, j]) // n)
        B = QTau.raw(int(YB[0][i, j]) // n, int(YB[1][i, j]) // n)
        z = from_pair(A, B)
        assert isinstance(z, CycInt)
        out[(i, j)] = z
    return out


def build_grid(p1: XRayData, p2: XRayData, admit: Callable[[CycInt], bool] | None = None) -> CandidateGrid:
    """Candidate grid of two X-rays; ``admit`` filters the allowed cells."""
    u1, u2 = p1.direction, p2.direction
    if u1 == u2:
        raise ValueError("X-ray directions must not be parallel")
    rows, cols = p1.offsets, p2.offsets
    cells = _integral_cells(rows, cols, u1, u2) if rows and cols else {}
    if admit is None:
        allowed = frozenset(cells)
    else:
        allowed = frozenset(k for k, z in cells.items() if admit(z))
    return CandidateGrid(u1, u2, rows, cols, cells, allowed)


# -- flows -------------------------------------------------------------------

def _check_match(grid: CandidateGrid, p1: XRayData, p2: XRayData) -> None:
    if p1.direction != grid.u1 or p2.direction != grid.u2:
        raise ValueError("X-rays do not match the grid directions")
    if p1.offsets != grid.rows or p2.offsets != grid.cols:
        raise ValueError("X-ray supports do not match the grid")


def _max_flow_cells(grid: CandidateGrid, rdem: Sequence[int], cdem: Sequence[int]):
    """A maximum set of allowed cells respecting the row/column capacities."""
    nr, nc = len(rdem), len(cdem)
    cells = sorted(grid.allowed)
    if not cells:
        return 0, []
    src, snk = nr + nc, nr + nc + 1
    heads = [src] * nr + [i for i, _ in cells] + [nr + j for j in range(nc)]
    tails = list(range(nr)) + [nr + j for _, j in cells] + [snk] * nc
    caps = list(rdem) + [1] * len(cells) + list(cdem)
    m = csr_matrix(
        (np.array(caps, dtype=np.int32), (np.array(heads), np.array(tails))),
        shape=(nr + nc + 2, nr + nc + 2),
    )
    res = maximum_flow(m, src, snk)
    flow = res.flow.tocsr() if hasattr(res, "flow") else res.residual.tocsr()
    chosen = [(i, j) for (i, j) in cells if flow[i, nr + j] > 0]
    return int(res.flow_value), chosen


def consistency(grid: CandidateGrid, p1: XRayData, p2: XRayData) -> bool:
    _check_match(grid, p1, p2)
    if p1.total != p2.total:
        return False
    if p1.total == 0:
        return True
    value, _ = _max_flow_cells(grid, p1.counts, p2.counts)
    return value == p1.total


def _lex_min(grid: CandidateGrid, chosen: set, nr: int) -> set:
    """Rewrite a feasible cell set into the lexicographically smallest one.

    Rows are settled in order.  Inside row ``r0`` the columns are scanned
    ascending; an unused column ``c'`` enters if an alternating path through
    rows below ``r0`` leads from it to a used, still movable column of
    ``r0``.  Such a path exists iff some solution agreeing with all earlier
    decisions uses ``(r0, c')``.
    """
    row_allowed = [[] for _ in range(nr)]
    for i, j in sorted(grid.allowed):
        row_allowed[i].append(j)
    col_rows: dict[int, set] = {}
    for i, j in chosen:
        col_rows.setdefault(j, set()).add(i)
    # allowed row -> cols for the residual adjacency
    allowed_by_col: dict[int, list] = {}
    for i, j in grid.allowed:
        allowed_by_col.setdefault(j, []).append(i)

    def reverse_reach(r0: int, targets: set) -> set:
        # columns from which some target is reachable through rows > r0
        seen = set(targets)
        queue = deque(targets)
        seen_rows = set()
        while queue:
            c = queue.popleft()
            # arrive at c from row r via an unused allowed cell (r, c)
            for r in allowed_by_col.get(c, ()):
                if r <= r0 or (r, c) in chosen or r in seen_rows:
                    continue
                seen_rows.add(r)
                # reach row r from column c2 via a used cell (r, c2)
                for c2 in row_allowed[r]:
                    if (r, c2) in chosen and c2 not in seen:
                        seen.add(c2)
                        queue.append(c2)
        return seen

    def forward_path(r0: int, start: int, targets: set):
        prev: dict = {("c", start): None}
        queue = deque([start])
        while queue:
            c = queue.popleft()
            if c in targets and c != start:
                path = []
                node = ("c", c)
                while node is not None:
                    path.append(node)
                    node = prev[node]
                return path[::-1]
            for r in sorted(col_rows.get(c, ())):
                if r <= r0 or ("r", r) in prev:
                    continue
                prev[("r", r)] = ("c", c)
                for c2 in row_allowed[r]:
                    if (r, c2) not in chosen and ("c", c2) not in prev:
                        prev[("c", c2)] = ("r", r)
                        queue.append(c2)
        return None

    for r0 in range(nr):
        used = sorted(j for j in row_allowed[r0] if (r0, j) in chosen)
        movable = set(used)
        reach = None
        for c_new in row_allowed[r0]:
            if (r0, c_new) in chosen:
                movable.discard(c_new)
                reach = None
                continue
            if not movable:
                break
            if reach is None:
                reach = reverse_reach(r0, movable)
            if c_new not in reach:
                continue
            path = forward_path(r0, c_new, movable)
            assert path is not None
            # path alternates c_new, r, c, r, ..., c_end
            for a, b in zip(path, path[1:]):
                if a[0] == "c":  # column -> row: drop used cell (row, col)
                    cell = (b[1], a[1])
                    chosen.discard(cell)
                    col_rows[a[1]].discard(b[1])
                else:  # row -> column: add cell
                    cell = (a[1], b[1])
                    chosen.add(cell)
                    col_rows.setdefault(b[1], set()).add(a[1])
            c_end = path[-1][1]
            chosen.discard((r0, c_end))
            col_rows[c_end].discard(r0)
            chosen.add((r0, c_new))
            col_rows.setdefault(c_new, set()).add(r0)
            movable.discard(c_end)
            reach = None
    return chosen


def reconstruct(grid: CandidateGrid, p1: XRayData, p2: XRayData) -> Solution:
    """Lexicographically smallest solution by ``(row offset, col offset)``."""
    _check_match(grid, p1, p2)
    if p1.total != p2.total:
        raise InfeasibleError(f"X-ray totals differ ({p1.total} vs {p2.total})")
    if p1.total == 0:
        return Solution((), "reconstruct")
    value, chosen = _max_flow_cells(grid, p1.counts, p2.counts)
    if value != p1.total:
        raise InfeasibleError(f"maximum flow {value} is below the required {p1.total}")
    best = _lex_min(grid, set(chosen), len(grid.rows))
    return Solution(tuple(grid.point_set(best)), "reconstruct")


def uniqueness(points: Iterable[CycInt], u1, u2, admit: Callable[[CycInt], bool] | None = None) -> UniquenessResult:
    """Is ``points`` the only admissible set with its two X-rays?

    A second solution exists iff the residual digraph (rows to columns along
    unused allowed cells, columns to rows along used cells) has a cycle.
    """
    F = sorted(set(points))
    if not F:
        return UniquenessResult(True)
    if admit is not None:
        bad = [z for z in F if not admit(z)]
        if bad:
            raise ValueError(f"point {list(bad[0].c)} is not admissible")
    p1, p2 = xray(F, u1), xray(F, u2)
    grid = build_grid(p1, p2, admit)
    where = {z: k for k, z in grid.cells.items()}
    used = {where[z] for z in F}
    nr, nc = len(grid.rows), len(grid.cols)
    heads, tails = [], []
    for i, j in grid.allowed:
        if (i, j) in used:
            heads.append(nr + j)
            tails.append(i)
        else:
            heads.append(i)
            tails.append(nr + j)
    n = nr + nc
    if not heads:
        return UniquenessResult(True)
    g = csr_matrix((np.ones(len(heads), dtype=np.int8), (heads, tails)), shape=(n, n))
    ncomp, labels = connected_components(g, directed=True, connection="strong")
    sizes = np.bincount(labels, minlength=ncomp)
    big = [k for k in range(ncomp) if sizes[k] > 1]
    if not big:
        return UniquenessResult(True)
    comp = min(big, key=lambda k: int(np.nonzero(labels == k)[0][0]))
    cycle = _cycle_in_component(g, labels, comp)
    flip = set(used)
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        if a < nr:  # row -> column: add
            flip.add((a, b - nr))
        else:
            flip.discard((b, a - nr))
    return UniquenessResult(False, tuple(grid.point_set(flip)))


def _cycle_in_component(g, labels, comp) -> list[int]:
    members = np.nonzero(labels == comp)[0]
    start = int(members[0])
    prev = {start: None}
    queue = deque([start])
    indptr, indices = g.indptr, g.indices
    while queue:
        v = queue.popleft()
        for w in indices[indptr[v]:indptr[v + 1]]:
            w = int(w)
            if labels[w] != comp:
                continue
            if w == start:
                path = [v]
                while prev[path[-1]] is not None:
                    path.append(prev[path[-1]])
                return path[::-1]
            if w not in prev:
                prev[w] = v
                queue.append(w)
    raise AssertionError("strong component without a cycle")  # pragma: no cover


# -- any Penrose model set ------------------------------------------------------

@dataclass
class _Face:
    polygon: list
    label: frozenset = field(default_factory=frozenset)


def _arrangement(regions: list[tuple[tuple[int, int], list[PlaneCoord]]]) -> list[_Face]:
    """Faces of the overlay of convex regions, labelled by the regions containing them."""
    ps = [v.p for _, poly in regions for v in poly]
    qs = [v.q for _, poly in regions for v in poly]
    lo_p, hi_p = min(ps) - 1, max(ps) + 1
    lo_q, hi_q = min(qs) - 1, max(qs) + 1
    box = [PlaneCoord(lo_p, lo_q), PlaneCoord(hi_p, lo_q), PlaneCoord(hi_p, hi_q), PlaneCoord(lo_p, hi_q)]
    faces = [_Face(box)]
    for key, poly in regions:
        nxt = []
        for f in faces:
            inside = geometry.intersect(f.polygon, poly)
            if not geometry.has_interior(inside):
                nxt.append(f)
                continue
            nxt.append(_Face(inside, f.label | {key}))
            for piece in geometry.subtract(f.polygon, poly):
                nxt.append(_Face(piece, f.label))
        faces = nxt
    return faces


def consistency_any_pms(p1: XRayData, p2: XRayData) -> Solution:
    """Find a model set and a subset of it with the given X-rays.

    Shift space is cut by the pentagons ``sigma2(z) - W(j)`` of all grid
    cells; inside one face the admissible cells are constant.  Only faces
    with inclusion-maximal labels need a flow, since enlarging the allowed
    set never destroys feasibility.
    """
    if p1.total != p2.total:
        raise InfeasibleError(f"X-ray totals differ ({p1.total} vs {p2.total})")
    grid = build_grid(p1, p2)
    if p1.total == 0:
        return Solution((), "any_pms", interior_generic_spec(WINDOW_POLYGONS[1], 0))
    for c in range(5):
        regions = []
        for key in sorted(grid.cells):
            reg = shift_region(grid.cells[key], c)
            if reg is not None:
                regions.append((key, reg))
        if len(regions) < p1.total:
            continue
        faces = _arrangement(regions)
        labels = []
        seen = set()
        for f in faces:
            if len(f.label) >= p1.total and f.label not in seen:
                seen.add(f.label)
                labels.append(f)
        maximal = [f for f in labels if not any(f.label < g.label for g in labels)]
        for f in maximal:
            sub = grid.restrict(f.label)
            value, _ = _max_flow_cells(sub, p1.counts, p2.counts)
            if value != p1.total:
                continue
            spec = interior_generic_spec(f.polygon, c)
            sol = reconstruct(sub, p1, p2)
            assert all(pms_member(z, spec) for z in sol.points)
            return Solution(sol.points, "any_pms", spec)
    raise InfeasibleError("no Penrose model set contains a set with these X-rays")
