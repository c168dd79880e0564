import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from penrose_tomo.cyclotomic import (
    TAU_CYC,
    ZETA,
    CycInt,
    Direction,
    canonical_direction,
    conj,
    embed,
    from_pair,
    galois,
    intersect_lines,
    line_offset,
    parallel,
    solve_offsets,
    star,
    to_pair,
    unembed,
)
from penrose_tomo.qtau import TAU, QTau

coef = st.integers(-30, 30)
cyc = st.builds(CycInt, coef, coef, coef, coef)
nonzero = cyc.filter(bool)


def close(a, b, eps=1e-60):
    return abs(a - b) < mpmath.mpf(eps)


def test_zeta_relations():
    assert ZETA**5 == CycInt(1)
    assert sum((ZETA**k for k in range(5)), CycInt()) == CycInt()
    assert TAU_CYC * TAU_CYC == TAU_CYC + CycInt(1)


@given(cyc, cyc)
def test_values_match_complex_evaluation(a, b):
    with mpmath.workprec(256):
        assert close(oracles.value(a * b), oracles.value(a) * oracles.value(b))
        assert close(oracles.value(a + b), oracles.value(a) + oracles.value(b))


@given(cyc, st.sampled_from([1, 2, 3, 4]))
def test_galois_matches_substitution(a, m):
    with mpmath.workprec(256):
        assert close(oracles.value(galois(a, m)), oracles.galois_value(a, m))


def test_galois_rejects_multiple_of_five():
    with pytest.raises(ValueError):
        galois(ZETA, 5)


@given(cyc)
def test_pair_and_plane_round_trips(z):
    assert from_pair(*to_pair(z)) == z
    assert unembed(embed(z)) == z
    x, y = embed(z).to_float()
    assert complex(x, y) == pytest.approx(z.to_complex(), abs=1e-9)


@given(cyc)
def test_conj_is_complex_conjugate(z):
    assert conj(z).to_complex() == pytest.approx(z.to_complex().conjugate(), abs=1e-9)


def test_star_map():
    sp = star(CycInt(1, 2, 0, 0))
    assert sp.internal == CycInt(1) + CycInt(0, 0, 2, 0)
    assert sp.class_index == 3


@given(nonzero)
def test_direction_is_class_invariant(u):
    d = Direction(u)
    assert Direction(-u) == d
    assert Direction(u * TAU_CYC) == d
    assert parallel(d.representative, u)
    n2 = embed(d.representative).norm2()
    assert QTau(1) <= n2 < TAU * TAU


@given(nonzero, cyc, cyc)
def test_offsets_key_lines(u, a, b):
    d = Direction(u)
    same = oracles.msign(oracles.cross_value(b - a, u)) == 0
    assert (d.offset(a) == d.offset(b)) == same
    assert d.offset(a + u) == d.offset(a)
    assert d.offset_parts(a) == d.offset(a).parts[:2]
    assert d.is_reachable(d.offset(a))


def test_direction_rejects_zero():
    with pytest.raises(ValueError):
        Direction(CycInt())
    with pytest.raises(ValueError):
        parallel(ZETA, CycInt())


def test_scale_of():
    d = Direction(ZETA)
    assert d.scale_of(d.representative * TAU_CYC) == TAU
    with pytest.raises(ValueError):
        d.scale_of(CycInt(1))


@given(cyc)
def test_two_lines_meet_at_the_point(z):
    u1, u2 = Direction(CycInt(1)), Direction(ZETA)
    assert solve_offsets(u1.offset(z), u1, u2.offset(z), u2) == z
    assert intersect_lines(z, u1, z, u2).point == z
    assert intersect_lines(z, u1, z + ZETA, u1).kind == "parallel"
    assert intersect_lines(z, u1, z + CycInt(1), u1).kind == "same"


def test_line_offset_of_rational_point_and_canonical():
    d = canonical_direction(CycInt(1))
    assert canonical_direction(d) is d
    assert canonical_direction([0, 1, 0, 0]) == Direction(ZETA)
    half = from_pair(QTau(0), QTau(1) / 2)
    assert line_offset(half, d) * 2 == line_offset(ZETA, d)


def test_json():
    z = CycInt(1, -2, 3, 0)
    assert CycInt.from_json(z.to_json()) == z
    for bad in ([1, 2, 3], [1, 2, 3, 4.0], "1234", [True, 0, 0, 0]):
        with pytest.raises(ValueError):
            CycInt.from_json(bad)
