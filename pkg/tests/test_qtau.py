from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from penrose_tomo.qtau import ONE, SQRT5, TAU, TAU_INV, QTau, zt_divides, zt_divmod, zt_gcd

small = st.integers(-60, 60)
frac = st.fractions(min_value=-40, max_value=40, max_denominator=30)
qtaus = st.builds(QTau, frac, frac)
zt = st.builds(QTau, small, small)


def test_constants():
    assert TAU * TAU == TAU + ONE
    assert TAU * TAU_INV == ONE
    assert SQRT5 * SQRT5 == QTau(5)
    assert float(TAU) == pytest.approx((1 + 5**0.5) / 2)


@given(qtaus, qtaus, qtaus)
def test_field_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a - b) + b == a
    if b:
        assert (a / b) * b == a


@given(qtaus)
def test_sign_and_order_match_high_precision(x):
    assert x.sign() == oracles.msign(oracles.qvalue(x))
    y = x + QTau(Fraction(1, 1000), 0)
    assert x < y and not y < x


@given(qtaus)
def test_floor_ceil(x):
    f = x.floor()
    with mpmath.workprec(256):
        v = oracles.qvalue(x)
        assert f == int(mpmath.floor(v))
        assert x.ceil() == int(mpmath.ceil(v))


def test_fibonacci_near_zero_signs():
    fib = [0, 1]
    for _ in range(80):
        fib.append(fib[-1] + fib[-2])
    for n in range(2, 80):
        x = QTau(fib[n + 1], -fib[n])  # tiny, alternating in sign
        assert x.sign() == (-1) ** n
        assert x.sign() == oracles.msign(oracles.qvalue(x))


@given(qtaus)
def test_norm_and_conj(x):
    assert (x * x.conj()).is_rational()
    assert x.norm() == (x * x.conj()).p


@given(qtaus)
def test_json_round_trip(x):
    assert QTau.from_json(x.to_json()) == x


@pytest.mark.parametrize("bad", [[[1, 0], [0, 1]], [[1, 2]], "x", [[True, 1], [1, 1]], [[1.5, 1], [0, 1]]])
def test_json_rejects(bad):
    with pytest.raises(ValueError):
        QTau.from_json(bad)


def test_equality_with_rationals_and_hash():
    assert QTau(3) == 3 and QTau(Fraction(1, 2)) == Fraction(1, 2)
    assert hash(QTau(Fraction(1, 2))) == hash(Fraction(1, 2))
    assert QTau(1, 1) != 2


@settings(max_examples=200)
@given(zt, zt)
def test_euclid_in_z_tau(a, b):
    if b:
        q, r = zt_divmod(a, b)
        assert q * b + r == a
        assert abs(r.norm()) < abs(b.norm())
    g = zt_gcd(a, b)
    if a or b:
        assert zt_divides(g, a) and zt_divides(g, b)


def test_gcd_rejects_non_integral():
    with pytest.raises(ValueError):
        zt_gcd(QTau(Fraction(1, 2)), QTau(1))


def test_pow_and_str():
    assert TAU**5 == QTau(3, 5)
    assert str(QTau(1, -2)) == "1-2τ"
    assert str(QTau(0, 3)) == "3τ"
