import json
import random
from fractions import Fraction

import numpy as np
import pytest

import oracles
from penrose_tomo import xray as xr
from penrose_tomo.cyclotomic import TAU_CYC, ZETA, CycInt, Direction
from penrose_tomo.determine import default_pool
from penrose_tomo.qtau import QTau


@pytest.mark.parametrize("k", range(6))
def test_counts_match_float_projection(patch20, k):
    u = list(default_pool(6))[k]
    pts = random.Random(k).sample(list(patch20.points), 300)
    x = xr.xray(pts, u)
    assert x.total == 300
    # offsets increase with the signed distance along the normal
    assert list(x.counts) == oracles.float_xray(pts, u)


def test_direction_invariance_and_shift(patch10):
    pts = list(patch10.points)[:50]
    u = CycInt(1, 1, 0, 0)
    assert xr.xray(pts, u) == xr.xray(pts, -u * TAU_CYC)
    t = CycInt(2, -1, 0, 3)
    assert xr.shifted(xr.xray(pts, u), t) == xr.xray([z + t for z in pts], u)


def test_xray_equal_checks_direction():
    a = xr.xray([CycInt(0)], CycInt(1))
    b = xr.xray([CycInt(0)], ZETA)
    with pytest.raises(ValueError):
        xr.xray_equal(a, b)
    assert xr.xray_equal(a, a)


def test_xray_data_validation():
    u = Direction(CycInt(1))
    with pytest.raises(ValueError):
        xr.XRayData(u, ((QTau(0), 0),))
    with pytest.raises(ValueError):
        xr.XRayData(u, ((QTau(1), 1), (QTau(0), 1)))


def test_json_round_trip(tmp_path, patch10):
    x = xr.xray(patch10.points, ZETA)
    path = tmp_path / "x.json"
    xr.save(x, path)
    assert xr.load(path) == x
    assert xr.from_json(json.loads(xr.dumps(x))) == x


def test_json_in_a_scaled_direction():
    pts = [CycInt(0), ZETA, CycInt(1, 1, 0, 0)]
    u = CycInt(1)
    x = xr.xray(pts, u)
    # the same lines written for the vector -tau: offsets scale and reverse
    v = -TAU_CYC
    scale = x.direction.scale_of(v)
    doc = {
        "direction": v.to_json(),
        "lines": [{"offset": (o * scale).to_json(), "count": n} for o, n in reversed(x.lines)],
    }
    assert xr.from_json(doc) == x


@pytest.mark.parametrize(
    "doc",
    [
        {},
        {"direction": [0, 0, 0, 0], "lines": []},
        {"direction": [1, 0, 0], "lines": []},
        {"direction": [1, 0, 0, 0], "lines": {}},
        {"direction": [1, 0, 0, 0], "lines": [{"offset": [[0, 1], [0, 1]], "count": 0}]},
        {"direction": [1, 0, 0, 0], "lines": [{"offset": [[0, 1], [0, 1]], "count": True}]},
        {"direction": [1, 0, 0, 0], "lines": [{"offset": [[1, 2], [0, 1]], "count": 1}]},
        {"direction": [1, 0, 0, 0], "lines": [{"offset": [[1, 1], [0, 1]], "count": 1},
                                            {"offset": [[0, 1], [0, 1]], "count": 1}]},
        {"direction": [1, 0, 0, 0], "lines": [{"count": 1}]},
    ],
)
def test_json_rejects(doc):
    with pytest.raises(xr.XRayFormatError):
        xr.from_json(doc)


def test_load_bad_file(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(xr.XRayFormatError):
        xr.load(p)


def test_multiplicity_scan(patch20):
    assert xr.multiplicity_scan(patch20.points, 1, 1) == 1
    assert xr.multiplicity_scan(patch20.points, Fraction(2, 3), -5) == 1
    assert xr.multiplicity_scan([], 1, 2) == 0
    for bad in ((0, 1), (1, 0), (0, 0)):
        with pytest.raises(ValueError):
            xr.multiplicity_scan(patch20.points, *bad)
    assert oracles.float_line_multiplicity(patch20.points, 2 / 3, -5.0) == 1


def test_line_density(patch20):
    info = xr.line_density(patch20.points, CycInt(1))
    assert info["points"] == len(patch20)
    assert sum(int(k) * v for k, v in info["per_line_histogram"].items()) == len(patch20)
    assert 0 < info["min_spacing"] <= info["mean_spacing"] <= info["max_spacing"]
    ys = np.array([complex(oracles.value(z)).imag for z in patch20.points])
    gaps = np.diff(np.unique(np.round(ys, 9)))
    assert info["min_spacing"] == pytest.approx(gaps.min(), abs=1e-8)
