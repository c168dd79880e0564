"""Determination experiments: which classes of finite sets do X-rays pin down?

A class is determined by a direction set U when no two distinct members
share all their X-rays along U.  Every search here is a direct collision
search: each enumerated set gets an additive random signature of its
X-rays, equal signatures are checked exactly, and only exact equality
counts as a counterexample.
"""

from __future__ import annotations

import functools
import itertools
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from . import geometry
from .cyclotomic import CycInt, Direction, canonical_direction, embed, from_pair
from .modelset import Patch, WindowSpec, fit_some_pms, generate_patch, pms_member
from .qtau import SQRT5, TAU, TAU_FLOAT, QTau
from .tomo import build_grid
from .xray import XRayData, xray, xray_equal


class PoolExhausted(RuntimeError):
    """No direction in the pool separates the remaining candidates."""

    def __init__(self, message: str, blocking: tuple[CycInt, CycInt] | None = None) -> None:
        super().__init__(message)
        self.blocking = blocking


class RegionTooLarge(ValueError):
    pass


# -- direction sets ------------------------------------------------------------

@dataclass(frozen=True)
class DirectionSet:
    directions: tuple[Direction, ...]

    def __post_init__(self) -> None:
        if not self.directions:
            raise ValueError("a direction set must be nonempty")
        if len(set(self.directions)) != len(self.directions):
            raise ValueError("directions must be pairwise non-parallel")

    @classmethod
    def of(cls, vectors: Iterable) -> DirectionSet:
        return cls(tuple(canonical_direction(v) for v in vectors))

    def __iter__(self):
        return iter(self.directions)

    def __len__(self) -> int:
        return len(self.directions)

    def __getitem__(self, i):
        return self.directions[i]

    def to_json(self) -> list:
        return [u.to_json() for u in self.directions]


def u5_directions() -> DirectionSet:
    """The four directions (1+tau)+zeta, (tau-1)+zeta, -tau+zeta, 2tau-zeta."""
    return DirectionSet.of([
        CycInt(1, 1, -1, -1),
        CycInt(-1, 1, -1, -1),
        CycInt(0, 1, 1, 1),
        CycInt(0, -1, -2, -2),
    ])


def _small_reals(h: int, bound: float) -> list[QTau]:
    """Z[tau] elements of height <= h and absolute value <= bound."""
    out = []
    for b in range(-h, h + 1):
        centre = -b * TAU_FLOAT
        for a in range(math.floor(centre - bound) - 1, math.ceil(centre + bound) + 2):
            if abs(a) <= h and abs(a + b * TAU_FLOAT) <= bound:
                out.append(QTau.raw(a, b))
    return out


@functools.lru_cache(maxsize=None)
def _pool_level(h: int) -> tuple[Direction, ...]:
    """Directions whose canonical key has height exactly h.

    A canonical representative alpha + beta*zeta has length below tau, so
    |beta| < tau / sin(72 deg) and |alpha| < tau + |beta| cos(72 deg).
    """
    found = set()
    alphas = _small_reals(h, 2.2)
    betas = _small_reals(h, 1.75)
    for alpha in alphas:
        for beta in betas:
            if alpha.is_zero() and beta.is_zero():
                continue
            if max(abs(v) for v in alpha.parts[:2] + beta.parts[:2]) != h:
                continue
            u = canonical_direction(from_pair(alpha, beta))
            if u.height == h:
                found.add(u)
    return tuple(sorted(found, key=Direction.sort_key))


def direction_pool(max_height: int | None = None) -> Iterator[Direction]:
    """All directions ordered by (key height, key); endless unless bounded.

    A canonical key of height h is its own canonical form, so scanning the
    coordinate box of size h finds every direction of that height.
    """
    h = 1
    seen: set = set()
    while max_height is None or h <= max_height:
        for u in _pool_level(h):
            if u not in seen:
                seen.add(u)
                yield u
        h += 1


def default_pool(n: int) -> DirectionSet:
    return DirectionSet(tuple(itertools.islice(direction_pool(), n)))


# -- the even/odd switching device -----------------------------------------------

@dataclass(frozen=True)
class EvenOddPair:
    even: tuple[CycInt, ...]
    odd: tuple[CycInt, ...]
    vectors: tuple[CycInt, ...]
    directions: DirectionSet
    trace: tuple[int, ...] = ()


def _subset_sums(vectors: Sequence[CycInt]):
    even, odd = [], []
    for mask in range(1 << len(vectors)):
        s = CycInt()
        for i, v in enumerate(vectors):
            if mask >> i & 1:
                s = s + v
        (odd if bin(mask).count("1") % 2 else even).append(s)
    return even, odd


def even_odd_pair(U: DirectionSet | Sequence, compact: bool = False, max_attempts: int = 50) -> EvenOddPair:
    """Even and odd subset sums of scaled direction representatives.

    Attempt t scales the i-th representative by t**i; the first attempt with
    all subset sums distinct wins.  Each line along u_i through an even sum
    s meets the odd sum s + v_i and vice versa, which pairs the X-rays.

    ``compact`` first multiplies every representative by sqrt(5) tau**(2k),
    choosing k so that the internal images are tiny: then all sums share
    class 0 and cluster in internal space, so they fit in one model set.
    """
    if not isinstance(U, DirectionSet):
        U = DirectionSet.of(U)
    base = [u.representative for u in U]
    if compact:
        base = [_compact(v) for v in base]
    trace = []
    for t in range(1, max_attempts + 1):
        trace.append(t)
        vecs = [v * (t**i) for i, v in enumerate(base)]
        even, odd = _subset_sums(vecs)
        if len(set(even + odd)) == 1 << len(vecs):
            return EvenOddPair(tuple(sorted(even)), tuple(sorted(odd)), tuple(vecs), U, tuple(trace))
    raise RuntimeError(f"subset sums still collide after multipliers {trace}")


_SQRT5_CYC = from_pair(SQRT5, QTau(0))
_TAU2_CYC = from_pair(TAU * TAU, QTau(0))


def _compact(v: CycInt, bound: float = 0.15) -> CycInt:
    from .cyclotomic import embed_internal

    w = v * _SQRT5_CYC
    while float(embed_internal(w).norm2()) ** 0.5 > bound:
        w = w * _TAU2_CYC
    return w


@dataclass(frozen=True)
class CommonPMS:
    translate: CycInt
    spec: WindowSpec


def embed_pair_in_common_pms(F, Fp, search_radius, spec: WindowSpec | None = None,
                             patch: Patch | None = None) -> CommonPMS | None:
    """First translate t with t+F and t+F' inside one Penrose model set.

    Translates are 0 followed by the patch points within ``search_radius``
    in coefficient order.  Without ``spec`` any model set will do; with it,
    the translated union must lie in that fixed one.
    """
    union = sorted(set(F) | set(Fp))
    if not union:
        raise ValueError("empty point sets")
    if spec is None:
        # translating moves (shift, class rotation) along, so fitting some
        # model set does not depend on t: the answer at t = 0 is final
        fit = fit_some_pms(union)
        return CommonPMS(CycInt(), fit.spec()) if fit is not None else None
    if patch is None:
        patch = generate_patch(search_radius, spec)
    cands = [CycInt()] + sorted(z for z in patch.within(search_radius) if z)
    for t in cands:
        if all(pms_member(t + z, spec) for z in union):
            return CommonPMS(t, spec)
    return None


# -- signatures ------------------------------------------------------------------

class Hasher:
    """Additive 64-bit signature of the X-rays of a set along U."""

    def __init__(self, U: DirectionSet, seed: int = 0) -> None:
        self.U = U
        self._rng = np.random.default_rng(seed)
        self._tables: list[dict] = [{} for _ in U]
        self._point: dict = {}

    def _line_weight(self, k: int, key) -> int:
        t = self._tables[k]
        w = t.get(key)
        if w is None:
            w = int(self._rng.integers(0, 1 << 63, dtype=np.int64)) * 2 + 1
            t[key] = w
        return w

    def point(self, z: CycInt) -> int:
        h = self._point.get(z)
        if h is None:
            h = 0
            for k, u in enumerate(self.U):
                h += self._line_weight(k, u.offset_parts(z))
            h &= (1 << 64) - 1
            self._point[z] = h
        return h

    def of_set(self, S: Iterable[CycInt]) -> int:
        return sum(self.point(z) for z in S) & ((1 << 64) - 1)


def xrays_of(S: Iterable[CycInt], U: DirectionSet) -> tuple[XRayData, ...]:
    S = list(S)
    return tuple(xray(S, u) for u in U)


def same_xrays(A, B, U: DirectionSet) -> bool:
    return all(xray_equal(x, y) for x, y in zip(xrays_of(A, U), xrays_of(B, U)))


@dataclass
class DeterminationResult:
    determined: bool
    pair: tuple[tuple[CycInt, ...], tuple[CycInt, ...]] | None = None
    sets: int = 0
    signatures: int = 0
    hash_collisions: int = 0
    seconds: float = 0.0
    table: np.ndarray | None = field(default=None, repr=False)

    def to_json(self) -> dict:
        out = {
            "status": "determined" if self.determined else "counterpair",
            "sets": self.sets,
            "distinct_signatures": self.signatures,
            "hash_collisions": self.hash_collisions,
            "seconds": round(self.seconds, 3),
        }
        if self.pair is not None:
            out["counterpair"] = {
                "F": [z.to_json() for z in self.pair[0]],
                "F_prime": [z.to_json() for z in self.pair[1]],
            }
        return out


def check_determination(enumerator, U, seed: int = 0, keep_table: bool = False) -> DeterminationResult:
    """Search the enumerated sets for two distinct ones with equal X-rays along U."""
    if not isinstance(U, DirectionSet):
        U = DirectionSet.of(U)
    start = time.perf_counter()
    hasher = Hasher(U, seed)
    if hasattr(enumerator, "signature_scan"):
        res = enumerator.signature_scan(hasher, keep_table=keep_table)
    else:
        res = _generic_scan(enumerator, hasher, U)
    res.seconds = time.perf_counter() - start
    return res


def _generic_scan(sets: Iterable, hasher: Hasher, U: DirectionSet) -> DeterminationResult:
    buckets: dict[int, list] = {}
    n = 0
    spurious = 0
    for S in sets:
        S = tuple(sorted(S))
        n += 1
        h = hasher.of_set(S)
        prev = buckets.setdefault(h, [])
        for other in prev:
            if other == S:
                continue
            if same_xrays(other, S, U):
                return DeterminationResult(False, (other, S), n, len(buckets))
            spurious += 1
        if S not in prev:
            prev.append(S)
    return DeterminationResult(True, None, n, len(buckets), spurious)


# -- set classes ---------------------------------------------------------------

class AllSubsets:
    """Every nonempty subset of a finite point list."""

    def __init__(self, points: Iterable[CycInt]) -> None:
        self.points = tuple(sorted(set(points)))

    def __iter__(self):
        for k in range(1, len(self.points) + 1):
            yield from itertools.combinations(self.points, k)


class CardinalityAtMost:
    """Nonempty subsets with at most k points."""

    def __init__(self, points: Iterable[CycInt], k: int) -> None:
        self.points = tuple(sorted(set(points)))
        self.k = k

    def __iter__(self):
        for k in range(1, min(self.k, len(self.points)) + 1):
            yield from itertools.combinations(self.points, k)


class DiameterBelow:
    """Nonempty subsets whose diameter is strictly below R."""

    def __init__(self, points: Iterable[CycInt], R) -> None:
        self.points = tuple(sorted(set(points)))
        self.R2 = QTau.coerce(R) ** 2
        n = len(self.points)
        emb = [embed(z) for z in self.points]
        self._near = [
            [j for j in range(i + 1, n) if (emb[j] - emb[i]).norm2() < self.R2] for i in range(n)
        ]
        self._near_sets = [set(x) | {i} for i, x in enumerate(self._near)]

    def __iter__(self):
        pts = self.points

        def grow(chosen, cands):
            yield tuple(pts[i] for i in chosen)
            for idx, j in enumerate(cands):
                nxt = [k for k in cands[idx + 1:] if k in self._near_sets[j]]
                yield from grow(chosen + [j], nxt)

        for i in range(len(pts)):
            yield from grow([i], self._near[i])


# -- convex sets -----------------------------------------------------------------

@dataclass(frozen=True)
class ConvexSet:
    points: frozenset
    hull: tuple[CycInt, ...]


def _zt_mul(a, b):
    return a[0] * b[0] + a[1] * b[1], a[0] * b[1] + a[1] * b[0] + a[1] * b[1]


def orientation_table(points: Sequence[CycInt]) -> np.ndarray:
    """``T[i, j, k]`` is the exact orientation sign of (p_i, p_j, p_k)."""
    from .modelset import zt_sign_array

    A = np.array([z.c for z in points], dtype=object if _too_big(points) else np.int64).reshape(-1, 4)
    a0, a1, a2, a3 = (A[:, i] for i in range(4))
    # 2p = X + Y tau, q = U + V tau
    X, Y = 2 * a0 - a1, a1 - a2 - a3
    Uq, Vq = a2 - a3, a1
    dX = X[None, :] - X[:, None]
    dY = Y[None, :] - Y[:, None]
    dU = Uq[None, :] - Uq[:, None]
    dV = Vq[None, :] - Vq[:, None]
    # cross((j - i), (k - i)) = dp_ij * dq_ik - dq_ij * dp_ik
    l = _zt_mul((dX[:, :, None], dY[:, :, None]), (dU[:, None, :], dV[:, None, :]))
    r = _zt_mul((dU[:, :, None], dV[:, :, None]), (dX[:, None, :], dY[:, None, :]))
    return zt_sign_array(l[0] - r[0], l[1] - r[1]).astype(np.int8)


def _too_big(points) -> bool:
    return any(abs(v) > 1 << 12 for z in points for v in z.c)


def convexity_check(C: Iterable[CycInt], points: Iterable[CycInt]) -> bool:
    """True iff C contains every listed point of its closed convex hull."""
    C = set(C)
    pts = points.points if isinstance(points, Patch) else tuple(points)
    if not C:
        return True
    if not C <= set(pts):
        raise ValueError("C must be a subset of the point list")
    hull = geometry.convex_hull(embed(z) for z in C)
    return all(z in C for z in pts if geometry.in_closed_hull(embed(z), hull))


_MASK64 = (1 << 64) - 1


class ConvexSets:
    """Every nonempty convex subset of a small point list, each exactly once.

    Polygons are grown from their lowest vertex: the other vertices come in
    strictly increasing angle, every turn is strictly left, and the points
    covered are accumulated one fan triangle at a time.  Segments and
    singletons are listed separately.
    """

    def __init__(self, points: Iterable[CycInt], cap: int = 40) -> None:
        self.points = tuple(sorted(set(points)))
        n = len(self.points)
        if n > cap:
            raise RegionTooLarge(
                f"region has {n} points, above the convex enumeration cap of {cap}; "
                f"use a smaller region or raise the cap"
            )
        self.cap = cap
        self._T = orientation_table(self.points) if n else np.zeros((0, 0, 0), np.int8)
        emb = [embed(z) for z in self.points]
        self._order = sorted(range(n), key=lambda i: (emb[i].q, emb[i].p))
        self._rank = {i: r for r, i in enumerate(self._order)}

    # per-anchor tables
    def _anchor(self, v0: int):
        T = self._T
        above = [i for i in self._order[self._rank[v0] + 1:]]
        if len(above) < 2:
            return None

        def cmp(a, b):
            s = T[v0, a, b]
            if s != 0:
                return -int(s)
            return 0

        # angular order; points on one ray can never both be vertices
        Q = sorted(above, key=functools.cmp_to_key(cmp))
        Qa = np.array(Q)
        # closed triangle (v0, Q_j, Q_k) membership for every point x
        t1 = T[v0][Qa][:, None, :] >= 0  # orient(v0, Qj, x)
        t2 = T[Qa][:, Qa][:, :, :] >= 0  # orient(Qj, Qk, x)
        t3 = T[Qa, v0][None, :, :] >= 0  # orient(Qk, v0, x)
        tri = t1 & t2 & t3  # (m, m, n)
        on_seg = (T[v0][Qa] == 0)[:, None, :] & tri
        return Q, tri, on_seg

    def _walk(self, v0, weights: np.ndarray | None, on_polygon):
        """DFS over convex vertex chains anchored at v0.

        ``on_polygon(sig, size, chain)`` is called for every closed polygon,
        with ``sig`` the sum of the point weights (mod 2**64) when weights
        are supplied.
        """
        data = self._anchor(v0)
        if data is None:
            return
        Q, tri, on_seg = data
        T = self._T
        m = len(Q)
        Qa = np.array(Q)
        fresh = tri & ~on_seg
        if weights is not None:
            w = weights.astype(np.uint64)
            full_sig = (tri.astype(np.uint64) * w).sum(axis=2, dtype=np.uint64)
            new_sig = (fresh.astype(np.uint64) * w).sum(axis=2, dtype=np.uint64)
        full_cnt = tri.sum(axis=2)
        new_cnt = fresh.sum(axis=2)
        ang = T[v0][Qa][:, Qa] > 0  # strictly increasing angle from Qj to Qk
        turn = T[Qa][:, Qa][:, :, Qa] > 0  # left turn Qj -> Qk -> Ql
        closes = T[Qa][:, Qa][:, :, v0] > 0
        succ = {}
        for j in range(m):
            for k in range(m):
                if ang[j, k]:
                    succ[(j, k)] = [l for l in np.nonzero(ang[k] & turn[j, k])[0].tolist()]
        fs = full_sig.tolist() if weights is not None else None
        ns = new_sig.tolist() if weights is not None else None
        fc = full_cnt.tolist()
        nc = new_cnt.tolist()
        cl = closes.tolist()
        for j in range(m):
            for k in range(m):
                if not ang[j, k]:
                    continue
                stack = [(j, k, fs[j][k] if fs else 0, fc[j][k], (j, k))]
                while stack:
                    a, b, sig, cnt, chain = stack.pop()
                    if cl[a][b]:
                        on_polygon(sig, cnt, chain, Q)
                    for c in succ[(a, b)]:
                        stack.append((b, c, (sig + ns[b][c]) & _MASK64 if ns else 0, cnt + nc[b][c], chain + (c,)))

    def _materialise_polygon(self, v0: int, Q, chain) -> ConvexSet:
        data = self._anchor(v0)
        _, tri, _ = data
        mask = np.zeros(len(self.points), dtype=bool)
        for a, b in zip(chain, chain[1:]):
            mask |= tri[a, b]
        pts = frozenset(self.points[i] for i in np.nonzero(mask)[0])
        hull = (self.points[v0],) + tuple(self.points[Q[i]] for i in chain)
        return ConvexSet(pts, hull)

    def _segments(self):
        T = self._T
        n = len(self.points)
        for i in range(n):
            for j in range(i + 1, n):
                col = np.nonzero(T[i, j] == 0)[0]
                pi, pj = embed(self.points[i]), embed(self.points[j])
                d = pj - pi
                members = []
                for k in col.tolist():
                    x = embed(self.points[k]) - pi
                    t = x.p * d.p + x.q * d.q
                    u = (pj - embed(self.points[k]))
                    t2 = u.p * d.p + u.q * d.q
                    if t.sign() >= 0 and t2.sign() >= 0:
                        members.append(k)
                yield i, j, members

    def __iter__(self) -> Iterator[ConvexSet]:
        for z in self.points:
            yield ConvexSet(frozenset([z]), (z,))
        for i, j, members in self._segments():
            yield ConvexSet(frozenset(self.points[k] for k in members), (self.points[i], self.points[j]))
        for v0 in range(len(self.points)):
            found = []
            self._walk(v0, None, lambda sig, cnt, chain, Q: found.append(chain))
            if not found:
                continue
            Q = self._anchor(v0)[0]
            for chain in found:
                yield self._materialise_polygon(v0, Q, chain)

    def count(self) -> int:
        n = len(self.points)
        total = n + n * (n - 1) // 2
        box = [0]

        def bump(sig, cnt, chain, Q):
            box[0] += 1

        for v0 in range(n):
            self._walk(v0, None, bump)
        return total + box[0]

    def signature_scan(self, hasher: Hasher, keep_table: bool = False) -> DeterminationResult:
        """Two passes: collect all signatures, then recover sets behind repeats."""
        n = len(self.points)
        weights = np.array([hasher.point(z) for z in self.points], dtype=np.uint64) if n else np.zeros(0, np.uint64)
        single = weights.tolist()
        sigs: list[int] = list(single)
        segs = list(self._segments())
        seg_sig = []
        for i, j, members in segs:
            s = 0
            for k in members:
                s += single[k]
            seg_sig.append(s & _MASK64)
        sigs.extend(seg_sig)
        for v0 in range(n):
            self._walk(v0, weights, lambda sig, cnt, chain, Q: sigs.append(sig))
        arr = np.array(sigs, dtype=np.uint64)
        srt = np.sort(arr)
        dup_mask = np.zeros(srt.size, dtype=bool)
        if srt.size > 1:
            eq = srt[1:] == srt[:-1]
            dup_mask[1:] |= eq
            dup_mask[:-1] |= eq
        dups = set(np.unique(srt[dup_mask]).tolist())
        distinct = int(np.unique(srt).size) if srt.size else 0
        table = srt if keep_table else None
        if not dups:
            return DeterminationResult(True, None, len(sigs), distinct, 0, table=table)
        # second pass over the repeated signatures only
        groups: dict[int, list] = {}
        for k, z in enumerate(self.points):
            if single[k] in dups:
                groups.setdefault(single[k], []).append(frozenset([z]))
        for (i, j, members), s in zip(segs, seg_sig):
            if s in dups:
                groups.setdefault(s, []).append(frozenset(self.points[k] for k in members))
        for v0 in range(n):
            hits = []
            self._walk(v0, weights, lambda sig, cnt, chain, Q: hits.append((sig, chain)) if sig in dups else None)
            if hits:
                Q = self._anchor(v0)[0]
                for sig, chain in hits:
                    groups.setdefault(sig, []).append(self._materialise_polygon(v0, Q, chain).points)
        spurious = 0
        U = hasher.U
        for sig in sorted(groups):
            sets = groups[sig]
            for a, b in itertools.combinations(sets, 2):
                if a != b and same_xrays(a, b, U):
                    pair = (tuple(sorted(a)), tuple(sorted(b)))
                    return DeterminationResult(False, pair, len(sigs), distinct, spurious, table=table)
                spurious += 1
        return DeterminationResult(True, None, len(sigs), distinct, spurious, table=table)


def region_points(patch: Patch, region_radius) -> list[CycInt]:
    if QTau.coerce(region_radius) > patch.radius:
        raise ValueError("region radius exceeds the patch radius")
    return patch.within(region_radius)


def enumerate_convex(patch: Patch, region_radius, cap: int = 40) -> ConvexSets:
    return ConvexSets(region_points(patch, region_radius), cap)


def make_enumerator(kind: str, points: Sequence[CycInt], k: int | None = None, R=None, cap: int = 40):
    if kind == "all":
        return AllSubsets(points)
    if kind == "card_le_k":
        if k is None:
            raise ValueError("card_le_k needs k")
        return CardinalityAtMost(points, k)
    if kind == "diam_lt_R":
        if R is None:
            raise ValueError("diam_lt_R needs R")
        return DiameterBelow(points, R)
    if kind == "convex":
        return ConvexSets(points, cap)
    raise ValueError(f"unknown enumerator class {kind!r}")


# -- successive determination ------------------------------------------------------

@dataclass
class SuccessiveResult:
    points: tuple[CycInt, ...]
    queries: list[Direction]
    answers: list[XRayData]

    @property
    def n_queries(self) -> int:
        return len(self.queries)


def _injective(points: Sequence[CycInt], u: Direction) -> tuple[CycInt, CycInt] | None:
    seen: dict = {}
    for z in points:
        key = u.offset_parts(z)
        if key in seen:
            return (seen[key], z)
        seen[key] = z
    return None


class _CachedPool:
    """Lazy, re-iterable view of the first ``limit`` pool directions."""

    def __init__(self, source: Iterable[Direction], limit: int) -> None:
        self._it = iter(source)
        self._seen: list[Direction] = []
        self.limit = limit

    def __getitem__(self, i: int) -> Direction:
        while len(self._seen) <= i:
            if len(self._seen) >= self.limit:
                raise PoolExhausted(f"direction pool limited to {self.limit} entries")
            try:
                self._seen.append(next(self._it))
            except StopIteration:
                raise PoolExhausted("direction pool ran out") from None
        return self._seen[i]

    def __iter__(self):
        i = 0
        while True:
            try:
                yield self[i]
            except PoolExhausted:
                return
            i += 1


def _first_injective(points, pool_iter, used, limit: int):
    blocking = None
    for n, u in enumerate(pool_iter):
        if n >= limit:
            break
        if u in used:
            continue
        clash = _injective(points, u)
        if clash is None:
            return u
        blocking = clash
    raise PoolExhausted(
        f"no injective direction among the first {limit} pool entries"
        + (f"; last blocking pair {[list(z.c) for z in blocking]}" if blocking else ""),
        blocking,
    )


def _line_keys(x: XRayData) -> set:
    return {off.parts[:2] for off in x.offsets}


def successive_determine(oracle: Callable[[Direction], XRayData], mode: str,
                         patch: Patch | None = None, region_radius=None,
                         pool: Iterable[Direction] | None = None, pool_limit: int = 2000) -> SuccessiveResult:
    """Recover a hidden set from adaptively chosen X-rays.

    ``fixed_pms``: the hidden set lies in the region of a known patch; the
    first answer confines it to the patch points on its support lines, and
    a direction separating those candidates finishes the job.
    ``any_pms``: two answers confine it to the integral grid of their
    support lines; a third direction separating the grid decides each cell.
    """
    pool = _CachedPool(pool if pool is not None else direction_pool(), pool_limit)
    queries: list[Direction] = []
    answers: list[XRayData] = []

    def ask(u: Direction) -> XRayData:
        x = oracle(u)
        if x.direction != u:
            raise ValueError("oracle answered for a different direction")
        queries.append(u)
        answers.append(x)
        return x

    def finish(points):
        pts = tuple(sorted(points))
        for u, x in zip(queries, answers):
            if xray(pts, u) != x:
                raise AssertionError("recovered set contradicts an oracle answer")
        return SuccessiveResult(pts, queries, answers)

    if mode == "fixed_pms":
        if patch is None or region_radius is None:
            raise ValueError("fixed_pms mode needs a patch and a region radius")
        x1 = ask(pool[0])
        lines = _line_keys(x1)
        u1 = pool[0]
        cands = [z for z in region_points(patch, region_radius) if u1.offset_parts(z) in lines]
        if len(cands) == x1.total:
            return finish(cands)
        u2 = _first_injective(cands, pool, set(queries), pool_limit)
        hit = _line_keys(ask(u2))
        return finish(z for z in cands if u2.offset_parts(z) in hit)
    if mode == "any_pms":
        x1 = ask(pool[0])
        x2 = ask(pool[1])
        grid = build_grid(x1, x2)
        cells = sorted(grid.cells.values())
        if len(cells) == x1.total:
            return finish(cells)
        u3 = _first_injective(cells, pool, set(queries), pool_limit)
        hit = _line_keys(ask(u3))
        return finish(z for z in cells if u3.offset_parts(z) in hit)
    raise ValueError(f"unknown mode {mode!r}")


def hidden_set_oracle(points: Iterable[CycInt]) -> Callable[[Direction], XRayData]:
    pts = tuple(points)
    return lambda u: xray(pts, u)


# -- searches that report what they find ----------------------------------------------

@dataclass
class PairSearch:
    pair: DirectionSet | None
    tried: list = field(default_factory=list)


def diameter_pair_search(points: Sequence[CycInt], R, pool_size: int = 12, seed: int = 0) -> PairSearch:
    """First pool pair (in pool order) that determines all sets of diameter < R."""
    enum = DiameterBelow(points, R)
    sets = [tuple(sorted(S)) for S in enum]
    pool = list(default_pool(pool_size))
    tried = []
    for a, b in itertools.combinations(range(len(pool)), 2):
        U = DirectionSet((pool[a], pool[b]))
        res = check_determination(sets, U, seed)
        tried.append((U, res))
        if res.determined:
            return PairSearch(U, tried)
    return PairSearch(None, tried)


def convex_three_direction_search(patch: Patch, radii: Sequence, U: DirectionSet | None = None,
                                  cap: int = 40, seed: int = 0) -> list[tuple[object, DeterminationResult]]:
    """Look for convex counterpairs under three of the four u5 directions.

    Runs every 3-subset over each region radius and stops at the first
    counterpair.  Finding none is only a bounded observation.
    """
    full = U or u5_directions()
    log = []
    for r in radii:
        enum = enumerate_convex(patch, r, cap)
        for sub in itertools.combinations(full.directions, 3):
            res = check_determination(enum, DirectionSet(sub), seed)
            log.append(((r, DirectionSet(sub)), res))
            if not res.determined:
                return log
    return log
