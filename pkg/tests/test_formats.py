import json
from fractions import Fraction

import pytest

from penrose_tomo import formats as fm
from penrose_tomo.cyclotomic import CycInt
from penrose_tomo.qtau import QTau


def test_dumps_keeps_integer_lists_flat():
    text = fm.dumps({"points": [[1, -2, 3, 0]], "offset": [[1, 2], [0, 1]]})
    assert "[1, -2, 3, 0]" in text and "[1, 2]" in text
    assert json.loads(text) == {"points": [[1, -2, 3, 0]], "offset": [[1, 2], [0, 1]]}


def test_point_files(tmp_path):
    pts = [CycInt(1), CycInt(0), CycInt(1)]
    path = tmp_path / "p.json"
    fm.write(fm.point_set_doc(pts), path)
    assert fm.load_points(path) == [CycInt(0), CycInt(1)]
    path.write_text("[[0, 0, 0, 1]]")
    assert fm.load_points(path) == [CycInt(0, 0, 0, 1)]
    for bad in ('{"pts": []}', '{"points": [[1, 2]]}', '{"points": 3}', "nope"):
        path.write_text(bad)
        with pytest.raises(fm.FormatError):
            fm.load_points(path)
    with pytest.raises(fm.FormatError):
        fm.read(tmp_path / "missing.json")


def test_patch_round_trip(tmp_path, patch10):
    path = tmp_path / "patch.json"
    fm.write(fm.patch_doc(patch10), path)
    back = fm.load_patch(path)
    assert back == patch10
    for bad in ({}, {"spec": 1, "radius": 1, "points": []}):
        with pytest.raises(fm.FormatError):
            fm.patch_from_doc(bad)


@pytest.mark.parametrize(
    "text, value",
    [
        ("3", QTau(3)),
        ("7/2", QTau(Fraction(7, 2))),
        ("1+2t", QTau(1, 2)),
        ("1-2/3t", QTau(1, Fraction(-2, 3))),
        ("t", QTau(0, 1)),
        ("-tau", QTau(0, -1)),
        ("1/2+tau", QTau(Fraction(1, 2), 1)),
    ],
)
def test_parse_qtau(text, value):
    assert fm.parse_qtau(text) == value


@pytest.mark.parametrize("text", ["", "x", "1+", "2tt", "1/0"])
def test_parse_qtau_rejects(text):
    with pytest.raises(fm.FormatError):
        fm.parse_qtau(text)


def test_other_literals():
    assert fm.parse_cycint("1,0,-1,2") == CycInt(1, 0, -1, 2)
    assert fm.parse_cycint("[0,1,0,0]") == CycInt(0, 1, 0, 0)
    assert fm.parse_rational(" -3/4 ") == Fraction(-3, 4)
    assert fm.parse_shift("1/7,1/11") == (QTau(Fraction(1, 7)), QTau(Fraction(1, 11)))
    for f, arg in ((fm.parse_cycint, "1,2"), (fm.parse_cycint, "1,2,3,x"), (fm.parse_rational, "a"),
                   (fm.parse_shift, "1")):
        with pytest.raises(fm.FormatError):
            f(arg)
