"""Cyclotomic integers Z[zeta_5], the star map, planar embeddings and directions.

Every element is written in the basis ``1, zeta, zeta**2, zeta**3`` with
``zeta = exp(2 pi i / 5)``.  Planar points are carried as :class:`PlaneCoord`
``(p, q)`` standing for ``(x, y) = (p, q * sin(pi/5))``; since ``sin(pi/5) > 0``
is a common factor of every y-coordinate, orientation tests reduce to the sign
of a Q(tau) value and never touch floating point.

Useful identities (all exact):

* ``tau = -zeta**2 - zeta**3`` and ``zeta**2 = (tau - 1) zeta - 1``, so
  ``Z[zeta] = Z[tau] + Z[tau] zeta``;
* ``Im(zeta) = tau * sin(pi/5)``, ``Im(zeta**2) = sin(pi/5)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Sequence

from .qtau import ONE, SIN36_SQ, TAU, TAU_INV, ZERO, QTau, zt_divides, zt_gcd

SIN36 = math.sin(math.pi / 5)


def _reduce7(c: Sequence[int]) -> tuple:
    """Reduce a polynomial in zeta of degree <= 8 to the basis 1..zeta^3."""
    r = [0] * 5
    for k, v in enumerate(c):
        r[k % 5] += v
    c4 = r[4]
    return (r[0] - c4, r[1] - c4, r[2] - c4, r[3] - c4)


def _mul_coeffs(a: Sequence, b: Sequence) -> tuple:
    a0, a1, a2, a3 = a
    b0, b1, b2, b3 = b
    c = (
        a0 * b0,
        a0 * b1 + a1 * b0,
        a0 * b2 + a1 * b1 + a2 * b0,
        a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0,
        a1 * b3 + a2 * b2 + a3 * b1,
        a2 * b3 + a3 * b2,
        a3 * b3,
    )
    return _reduce7(c)


# images of zeta^j (j = 0..4) in the basis, used by the Galois maps
_POW = (
    (1, 0, 0, 0),
    (0, 1, 0, 0),
    (0, 0, 1, 0),
    (0, 0, 0, 1),
    (-1, -1, -1, -1),
)


def _galois_coeffs(a: Sequence, m: int) -> tuple:
    out = [0, 0, 0, 0]
    for j, aj in enumerate(a):
        if aj:
            img = _POW[(j * m) % 5]
            for k in range(4):
                out[k] += aj * img[k]
    return tuple(out)


class _CycBase:
    __slots__ = ("c",)

    def __getitem__(self, i: int):
        return self.c[i]

    def __iter__(self):
        return iter(self.c)

    def __eq__(self, other) -> bool:
        if isinstance(other, _CycBase):
            return self.c == other.c
        if isinstance(other, int):
            return self.c == (other, 0, 0, 0)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.c)

    def __bool__(self) -> bool:
        return any(self.c)

    def to_complex(self) -> complex:
        z = complex(math.cos(2 * math.pi / 5), math.sin(2 * math.pi / 5))
        return sum(float(a) * z**j for j, a in enumerate(self.c))


@total_ordering
class CycInt(_CycBase):
    """Element ``a0 + a1 zeta + a2 zeta^2 + a3 zeta^3`` of Z[zeta_5]."""

    __slots__ = ()

    def __init__(self, a0: int = 0, a1: int = 0, a2: int = 0, a3: int = 0) -> None:
        self.c = (int(a0), int(a1), int(a2), int(a3))

    @classmethod
    def of(cls, coeffs: Iterable[int]) -> CycInt:
        obj = cls.__new__(cls)
        t = tuple(int(v) for v in coeffs)
        if len(t) != 4:
            raise ValueError(f"a cyclotomic integer needs 4 coefficients, got {t!r}")
        obj.c = t
        return obj

    def __lt__(self, other: CycInt) -> bool:
        return self.c < other.c

    def __add__(self, other) -> CycInt:
        if isinstance(other, int):
            other = CycInt(other)
        if not isinstance(other, CycInt):
            return NotImplemented
        a, b = self.c, other.c
        return CycInt.of((a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]))

    __radd__ = __add__

    def __neg__(self) -> CycInt:
        return CycInt.of(-v for v in self.c)

    def __sub__(self, other) -> CycInt:
        if isinstance(other, int):
            other = CycInt(other)
        if not isinstance(other, CycInt):
            return NotImplemented
        a, b = self.c, other.c
        return CycInt.of((a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]))

    def __rsub__(self, other) -> CycInt:
        return CycInt(other) - self

    def __mul__(self, other) -> CycInt:
        if isinstance(other, int):
            return CycInt.of(v * other for v in self.c)
        if not isinstance(other, CycInt):
            return NotImplemented
        return CycInt.of(_mul_coeffs(self.c, other.c))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> CycInt:
        if n < 0:
            raise ValueError("negative powers leave Z[zeta]")
        out = CycInt(1)
        for _ in range(n):
            out = out * self
        return out

    @property
    def class_index(self) -> int:
        return sum(self.c) % 5

    def to_json(self) -> list[int]:
        return list(self.c)

    @classmethod
    def from_json(cls, data) -> CycInt:
        if not isinstance(data, (list, tuple)) or len(data) != 4:
            raise ValueError(f"a cyclotomic integer is a list of 4 integers, got {data!r}")
        for v in data:
            if not isinstance(v, int) or isinstance(v, bool):
                raise ValueError(f"a cyclotomic integer is a list of 4 integers, got {data!r}")
        return cls.of(data)

    def __repr__(self) -> str:
        return f"CycInt{self.c}"


class CycRat(_CycBase):
    """Element of Q(zeta_5) with rational coefficients in the same basis."""

    __slots__ = ()

    def __init__(self, a0=0, a1=0, a2=0, a3=0) -> None:
        self.c = (Fraction(a0), Fraction(a1), Fraction(a2), Fraction(a3))

    @classmethod
    def of(cls, coeffs: Iterable) -> CycRat:
        return cls(*coeffs)

    def __add__(self, other) -> CycRat:
        other = as_cycrat(other)
        return CycRat.of(x + y for x, y in zip(self.c, other.c))

    __radd__ = __add__

    def __neg__(self) -> CycRat:
        return CycRat.of(-v for v in self.c)

    def __sub__(self, other) -> CycRat:
        return self + (-as_cycrat(other))

    def __rsub__(self, other) -> CycRat:
        return as_cycrat(other) - self

    def __mul__(self, other) -> CycRat:
        if isinstance(other, (int, Fraction)):
            return CycRat.of(v * other for v in self.c)
        other = as_cycrat(other)
        return CycRat.of(_mul_coeffs(self.c, other.c))

    __rmul__ = __mul__

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.c)

    def to_cycint(self) -> CycInt:
        if not self.is_integral():
            raise ValueError(f"{self!r} is not a cyclotomic integer")
        return CycInt.of(v.numerator for v in self.c)

    def __repr__(self) -> str:
        return "CycRat(" + ", ".join(str(v) for v in self.c) + ")"


def as_cycrat(x) -> CycRat:
    if isinstance(x, CycRat):
        return x
    if isinstance(x, CycInt):
        return CycRat.of(x.c)
    if isinstance(x, (int, Fraction)):
        return CycRat(x)
    raise TypeError(f"cannot convert {x!r} to CycRat")


def _same_kind(z, coeffs):
    return CycInt.of(coeffs) if isinstance(z, CycInt) else CycRat.of(coeffs)


ZETA = CycInt(0, 1, 0, 0)
#: tau = -zeta^2 - zeta^3
TAU_CYC = CycInt(0, 0, -1, -1)


def galois(z, m: int):
    """Apply the automorphism zeta -> zeta**m (m = 1..4)."""
    if m % 5 == 0:
        raise ValueError("galois exponent must be coprime to 5")
    return _same_kind(z, _galois_coeffs(z.c, m % 5))


def conj(z):
    """Complex conjugation, i.e. sigma_4."""
    return galois(z, 4)


@dataclass(frozen=True)
class StarPoint:
    internal: CycInt
    class_index: int

    def __add__(self, other: StarPoint) -> StarPoint:
        return StarPoint(self.internal + other.internal, (self.class_index + other.class_index) % 5)


def star(z: CycInt) -> StarPoint:
    """Star map z -> (sigma_2(z), sum of coefficients mod 5)."""
    return StarPoint(galois(z, 2), z.class_index)


# -- cyclotomic <-> pairs over Z[tau] -------------------------------------

def to_pair(z) -> tuple[QTau, QTau]:
    """Write ``z = alpha + beta*zeta`` with alpha, beta in Q(tau)."""
    a0, a1, a2, a3 = z.c
    alpha = QTau(a0 - a2 + a3, -a3)
    beta = QTau(a1 - a2 + a3, a2 - a3)
    return alpha, beta


def from_pair(alpha: QTau, beta: QTau):
    """Inverse of :func:`to_pair`; returns CycInt when integral."""
    x, y = alpha.p, alpha.q
    v, w = beta.p, beta.q
    coeffs = (x + w, v + w, w - y, -y)
    if all(c.denominator == 1 for c in coeffs):
        return CycInt.of(c.numerator for c in coeffs)
    return CycRat.of(coeffs)


def from_real(x: QTau) -> CycRat | CycInt:
    return from_pair(x, ZERO)


# -- planar coordinates ---------------------------------------------------

@dataclass(frozen=True)
class PlaneCoord:
    """Exact planar point ``(x, y) = (p, q * sin(pi/5))`` with p, q in Q(tau)."""

    p: QTau
    q: QTau

    def __add__(self, other: PlaneCoord) -> PlaneCoord:
        return PlaneCoord(self.p + other.p, self.q + other.q)

    def __sub__(self, other: PlaneCoord) -> PlaneCoord:
        return PlaneCoord(self.p - other.p, self.q - other.q)

    def __neg__(self) -> PlaneCoord:
        return PlaneCoord(-self.p, -self.q)

    def scale(self, k) -> PlaneCoord:
        k = QTau.coerce(k)
        return PlaneCoord(self.p * k, self.q * k)

    def norm2(self) -> QTau:
        return self.p * self.p + self.q * self.q * SIN36_SQ

    def to_float(self) -> tuple[float, float]:
        return float(self.p), float(self.q) * SIN36

    def to_json(self):
        return [self.p.to_json(), self.q.to_json()]

    @classmethod
    def from_json(cls, data) -> PlaneCoord:
        try:
            p, q = data
        except (TypeError, ValueError):
            raise ValueError(f"malformed planar coordinate {data!r}") from None
        return cls(QTau.from_json(p), QTau.from_json(q))

    @classmethod
    def of(cls, p, q) -> PlaneCoord:
        return cls(QTau.coerce(p), QTau.coerce(q))


ORIGIN = PlaneCoord(ZERO, ZERO)


def embed(z) -> PlaneCoord:
    """Canonical identification of Q(zeta_5) with the plane."""
    a0, a1, a2, a3 = z.c
    p = QTau(Fraction(a0) - Fraction(a1) / 2, (Fraction(a1) - a2 - a3) / 2)
    q = QTau(a2 - a3, a1)
    return PlaneCoord(p, q)


def embed_internal(z) -> PlaneCoord:
    return embed(galois(z, 2))


def unembed(pt: PlaneCoord):
    """Element of Q(zeta_5) with the given planar coordinates."""
    beta = pt.q * TAU_INV
    alpha = pt.p - beta * TAU_INV * QTau(Fraction(1, 2))
    return from_pair(alpha, beta)


def cross(a: PlaneCoord, b: PlaneCoord) -> QTau:
    """``(a x b) / sin(pi/5)``; same sign as the planar cross product."""
    return a.p * b.q - a.q * b.p


def orient(a: PlaneCoord, b: PlaneCoord, c: PlaneCoord) -> int:
    """+1 for a left turn a->b->c, -1 for a right turn, 0 if collinear."""
    return cross(b - a, c - a).sign()


def qtau_sign(x: QTau) -> int:
    return QTau.coerce(x).sign()


def norm2(z) -> QTau:
    return embed(z).norm2()


def imag_coeff(z) -> QTau:
    """q-coordinate of ``embed(z)``, i.e. ``Im(z) / sin(pi/5)``."""
    a0, a1, a2, a3 = z.c
    return QTau(Fraction(a2) - a3, Fraction(a1))


def parallel(z, u) -> bool:
    """True iff z is a real multiple of the nonzero u (z = 0 included)."""
    if not u:
        raise ValueError("parallel() needs a nonzero direction vector")
    return imag_coeff(z * conj(u)).is_zero()


# -- directions -----------------------------------------------------------

def _unit_normalise(alpha: QTau, beta: QTau) -> tuple[QTau, QTau]:
    """Multiply by +-tau**k so the embedded length lies in [1, tau)."""
    while True:
        n2 = embed(from_pair(alpha, beta)).norm2()
        if n2 < ONE:
            alpha, beta = alpha * TAU, beta * TAU
        elif n2 >= TAU * TAU:
            alpha, beta = alpha * TAU_INV, beta * TAU_INV
        else:
            break
    first = alpha if not alpha.is_zero() else beta
    if first.sign() < 0:
        alpha, beta = -alpha, -beta
    return alpha, beta


class Direction:
    """Parallel class of a nonzero cyclotomic integer.

    ``representative`` is the primitive element of the class (coprime
    Z[tau]-coordinates) normalised to length in ``[1, tau)`` with its first
    nonzero coordinate positive; ``key`` is that coordinate pair.
    """

    __slots__ = ("representative", "key", "_alpha", "_beta", "_offc", "_conj")

    def __init__(self, u: CycInt) -> None:
        if not isinstance(u, CycInt):
            u = CycInt.of(u)
        if not u:
            raise ValueError("a direction needs a nonzero cyclotomic integer")
        alpha, beta = to_pair(u)
        g = zt_gcd(alpha, beta)
        alpha, beta = _unit_normalise(alpha / g, beta / g)
        self._alpha, self._beta = alpha, beta
        self.key = (alpha.parts[:2], beta.parts[:2])
        rep = from_pair(alpha, beta)
        assert isinstance(rep, CycInt)
        self.representative = rep
        self._conj = conj(rep)
        # offset(z) = sum_j a_j * q(zeta^j * conj(rep)), all in Z[tau]
        self._offc = tuple(
            imag_coeff(CycInt.of(_POW[j]) * self._conj).parts[:2] for j in range(4)
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, Direction) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"Direction({list(self.representative.c)})"

    @property
    def height(self) -> int:
        return max(abs(v) for pair in self.key for v in pair)

    def sort_key(self):
        return (self.height, self.key)

    def offset(self, z: CycInt) -> QTau:
        return line_offset(z, self)

    def offset_parts(self, z: CycInt) -> tuple[int, int]:
        """Integer pair ``(P, Q)`` with offset ``P + Q*tau``."""
        c = z.c
        o = self._offc
        return (
            c[0] * o[0][0] + c[1] * o[1][0] + c[2] * o[2][0] + c[3] * o[3][0],
            c[0] * o[0][1] + c[1] * o[1][1] + c[2] * o[2][1] + c[3] * o[3][1],
        )

    def scale_of(self, z: CycInt) -> QTau:
        """The real lambda with ``z = lambda * representative``."""
        if not parallel(z, self.representative):
            raise ValueError(f"{z!r} is not parallel to {self!r}")
        a, b = to_pair(z)
        return a / self._alpha if not self._alpha.is_zero() else b / self._beta

    def offset_module_generator(self) -> QTau:
        """Generator of the Z[tau]-ideal of offsets realised by Z[zeta] points."""
        g0 = imag_coeff(self._conj)
        g1 = imag_coeff(ZETA * self._conj)
        return zt_gcd(g0, g1)

    def is_reachable(self, offset: QTau) -> bool:
        if not offset.is_integral():
            return False
        return zt_divides(self.offset_module_generator(), offset)

    def to_json(self) -> list[int]:
        return self.representative.to_json()


def canonical_direction(u) -> Direction:
    if isinstance(u, Direction):
        return u
    return Direction(u if isinstance(u, CycInt) else CycInt.of(u))


def line_offset(z, u: Direction) -> QTau:
    """Exact key of the line through z in direction u.

    Equals ``Im(z * conj(rep)) / sin(pi/5)``, i.e. a fixed positive multiple of
    the signed distance of the line from the origin.
    """
    if isinstance(z, CycInt):
        P, Q = u.offset_parts(z)
        return QTau.raw(P, Q)
    return imag_coeff(as_cycrat(z) * u._conj)


@dataclass(frozen=True)
class Intersection:
    kind: str  # "point", "parallel" or "same"
    point: CycRat | CycInt | None = None

    @property
    def integral(self) -> bool:
        return self.kind == "point" and isinstance(self.point, CycInt)


def solve_offsets(o1: QTau, u1: Direction, o2: QTau, u2: Direction):
    """Point with offset o1 w.r.t. u1 and offset o2 w.r.t. u2 (u1 not parallel u2)."""
    c0 = imag_coeff(u1._conj)
    c1 = imag_coeff(ZETA * u1._conj)
    d0 = imag_coeff(u2._conj)
    d1 = imag_coeff(ZETA * u2._conj)
    det = c0 * d1 - c1 * d0
    if det.is_zero():
        raise ValueError("directions are parallel")
    A = (o1 * d1 - c1 * o2) / det
    B = (c0 * o2 - o1 * d0) / det
    return from_pair(A, B)


def intersect_lines(a, u1: Direction, b, u2: Direction) -> Intersection:
    """Intersection of the line through a along u1 with the line through b along u2."""
    o1 = line_offset(a, u1)
    o2 = line_offset(b, u2)
    if u1 == u2:
        return Intersection("same" if o1 == o2 else "parallel")
    return Intersection("point", solve_offsets(o1, u1, o2, u2))
