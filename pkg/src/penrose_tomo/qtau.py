"""Exact arithmetic in the golden field Q(tau), tau = (1 + sqrt 5) / 2.

A value is stored as three integers ``(P, Q, D)`` meaning ``(P + Q*tau) / D``
with ``D > 0`` and ``gcd(P, Q, D) == 1``.  The ring identity ``tau**2 = tau + 1``
drives multiplication; signs are decided on integers only.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from numbers import Rational

TAU_FLOAT = (1.0 + math.sqrt(5.0)) / 2.0


def _int_sign(a: int, b: int) -> int:
    """Sign of ``a + b*sqrt(5)`` for integers ``a``, ``b``."""
    if a >= 0 and b >= 0:
        return 0 if a == 0 and b == 0 else 1
    if a <= 0 and b <= 0:
        return -1
    # opposite signs: compare squares
    lhs = a * a
    rhs = 5 * b * b
    if lhs > rhs:
        return 1 if a > 0 else -1
    if lhs < rhs:
        return 1 if b > 0 else -1
    return 0


def zt_sign(P: int, Q: int) -> int:
    """Sign of ``P + Q*tau`` for integers (no normalisation needed)."""
    return _int_sign(2 * P + Q, Q)


@total_ordering
class QTau:
    """An element ``p + q*tau`` of Q(tau) with rational ``p``, ``q``."""

    __slots__ = ("_P", "_Q", "_D")

    def __init__(self, p: int | Fraction = 0, q: int | Fraction = 0) -> None:
        p = Fraction(p)
        q = Fraction(q)
        d = p.denominator * q.denominator // math.gcd(p.denominator, q.denominator)
        P = p.numerator * (d // p.denominator)
        Q = q.numerator * (d // q.denominator)
        self._set(P, Q, d)

    def _set(self, P: int, Q: int, D: int) -> None:
        if D < 0:
            P, Q, D = -P, -Q, -D
        g = math.gcd(math.gcd(P, Q), D)
        if g > 1:
            P //= g
            Q //= g
            D //= g
        self._P = P
        self._Q = Q
        self._D = D

    @classmethod
    def raw(cls, P: int, Q: int, D: int = 1) -> QTau:
        """Build ``(P + Q*tau)/D`` from integers without going through Fraction."""
        obj = cls.__new__(cls)
        obj._set(P, Q, D)
        return obj

    @classmethod
    def coerce(cls, x) -> QTau:
        if isinstance(x, QTau):
            return x
        if isinstance(x, (int, Rational)):
            return cls(Fraction(x))
        raise TypeError(f"cannot convert {x!r} to QTau")

    # -- accessors -------------------------------------------------------
    @property
    def p(self) -> Fraction:
        return Fraction(self._P, self._D)

    @property
    def q(self) -> Fraction:
        return Fraction(self._Q, self._D)

    @property
    def parts(self) -> tuple[int, int, int]:
        return (self._P, self._Q, self._D)

    def is_integral(self) -> bool:
        return self._D == 1

    def is_zero(self) -> bool:
        return self._P == 0 and self._Q == 0

    def is_rational(self) -> bool:
        return self._Q == 0

    def sign(self) -> int:
        return zt_sign(self._P, self._Q)

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other) -> QTau:
        if not isinstance(other, QTau):
            try:
                other = QTau.coerce(other)
            except TypeError:
                return NotImplemented
        if self._D == other._D:
            return QTau.raw(self._P + other._P, self._Q + other._Q, self._D)
        return QTau.raw(
            self._P * other._D + other._P * self._D,
            self._Q * other._D + other._Q * self._D,
            self._D * other._D,
        )

    __radd__ = __add__

    def __neg__(self) -> QTau:
        obj = QTau.__new__(QTau)
        obj._P, obj._Q, obj._D = -self._P, -self._Q, self._D
        return obj

    def __sub__(self, other) -> QTau:
        if not isinstance(other, QTau):
            try:
                other = QTau.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> QTau:
        return QTau.coerce(other) - self

    def __mul__(self, other) -> QTau:
        if not isinstance(other, QTau):
            try:
                other = QTau.coerce(other)
            except TypeError:
                return NotImplemented
        a, b, c, d = self._P, self._Q, other._P, other._Q
        bd = b * d
        return QTau.raw(a * c + bd, a * d + b * c + bd, self._D * other._D)

    __rmul__ = __mul__

    def conj(self) -> QTau:
        """Galois conjugate: tau -> 1 - tau."""
        return QTau.raw(self._P + self._Q, -self._Q, self._D)

    def norm(self) -> Fraction:
        P, Q = self._P, self._Q
        return Fraction(P * P + P * Q - Q * Q, self._D * self._D)

    def inverse(self) -> QTau:
        P, Q, D = self._P, self._Q, self._D
        n = P * P + P * Q - Q * Q
        if n == 0:
            raise ZeroDivisionError("QTau division by zero")
        # (P + Q tau)^-1 = D * conj / n
        return QTau.raw(D * (P + Q), -D * Q, n)

    def __truediv__(self, other) -> QTau:
        if not isinstance(other, QTau):
            try:
                other = QTau.coerce(other)
            except TypeError:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> QTau:
        return QTau.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> QTau:
        if n < 0:
            return self.inverse() ** (-n)
        result = QTau.raw(1, 0)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison ------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, QTau):
            return self._P == other._P and self._Q == other._Q and self._D == other._D
        if isinstance(other, (int, Rational)):
            return self._Q == 0 and Fraction(self._P, self._D) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._Q == 0:
            return hash(Fraction(self._P, self._D))
        return hash((self._P, self._Q, self._D))

    def __lt__(self, other) -> bool:
        if not isinstance(other, QTau):
            try:
                other = QTau.coerce(other)
            except TypeError:
                return NotImplemented
        return (self - other).sign() < 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __abs__(self) -> QTau:
        return -self if self.sign() < 0 else self

    # -- rounding --------------------------------------------------------
    def floor(self) -> int:
        guess = math.floor(float(self))
        while QTau.raw(guess * self._D, 0) > QTau.raw(self._P, self._Q):
            guess -= 1
        while QTau.raw((guess + 1) * self._D, 0) <= QTau.raw(self._P, self._Q):
            guess += 1
        return guess

    def ceil(self) -> int:
        return -((-self).floor())

    def round(self) -> int:
        return (self + Fraction(1, 2)).floor()

    def __float__(self) -> float:
        P, Q, D = self._P, self._Q, self._D
        if max(abs(P), abs(Q), D) < (1 << 52):
            return (P + Q * TAU_FLOAT) / D
        return float(Fraction(P, D)) + float(Fraction(Q, D)) * TAU_FLOAT

    def __repr__(self) -> str:
        return f"QTau({self.p}, {self.q})"

    def __str__(self) -> str:
        if self._Q == 0:
            return str(self.p)
        if self._P == 0:
            return f"{self.q}τ"
        q = self.q
        return f"{self.p}{'+' if q > 0 else '-'}{abs(q)}τ"

    # -- serialisation ---------------------------------------------------
    def to_json(self) -> list[list[int]]:
        p, q = self.p, self.q
        return [[p.numerator, p.denominator], [q.numerator, q.denominator]]

    @classmethod
    def from_json(cls, data) -> QTau:
        try:
            (pn, pd), (qn, qd) = data
        except (TypeError, ValueError):
            raise ValueError(f"malformed QTau value {data!r}") from None
        for v in (pn, pd, qn, qd):
            if not isinstance(v, int) or isinstance(v, bool):
                raise ValueError(f"QTau entries must be integers, got {data!r}")
        if pd == 0 or qd == 0:
            raise ValueError(f"zero denominator in QTau value {data!r}")
        return cls(Fraction(pn, pd), Fraction(qn, qd))


ZERO = QTau.raw(0, 0)
ONE = QTau.raw(1, 0)
TAU = QTau.raw(0, 1)
TAU_INV = QTau.raw(-1, 1)  # tau - 1
SQRT5 = QTau.raw(-1, 2)  # 2 tau - 1
#: sin(pi/5)**2 = (5 - sqrt 5)/8 = (3 - tau)/4
SIN36_SQ = QTau.raw(3, -1, 4)


def qt(x) -> QTau:
    return QTau.coerce(x)


# -- the Euclidean ring Z[tau] -------------------------------------------

def zt_divmod(a: QTau, b: QTau) -> tuple[QTau, QTau]:
    """Euclidean division in Z[tau] with respect to |norm|."""
    if b.is_zero():
        raise ZeroDivisionError("zt_divmod by zero")
    exact = a / b
    qx = Fraction(exact._P, exact._D)
    qy = Fraction(exact._Q, exact._D)
    quo = QTau.raw(round(qx), round(qy))
    return quo, a - quo * b


def zt_gcd(a: QTau, b: QTau) -> QTau:
    """A gcd of two elements of Z[tau] (defined up to a unit)."""
    if not (a.is_integral() and b.is_integral()):
        raise ValueError("zt_gcd expects elements of Z[tau]")
    while not b.is_zero():
        _, r = zt_divmod(a, b)
        a, b = b, r
    return a


def zt_divides(d: QTau, x: QTau) -> bool:
    if d.is_zero():
        return x.is_zero()
    return (x / d).is_integral()
