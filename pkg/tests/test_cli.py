import json

import numpy as np
import pytest

from penrose_tomo import cli
from penrose_tomo import formats as fm
from penrose_tomo.cyclotomic import CycInt


def run(*argv):
    return cli.main([str(a) for a in argv])


@pytest.fixture()
def work(tmp_path):
    assert run("gen", "--radius", "4", "--out", tmp_path / "patch.json") == 0
    return tmp_path


def test_gen_and_stats(work, capsys):
    doc = json.loads((work / "patch.json").read_text())
    assert set(doc) == {"spec", "radius", "points"}
    assert run("stats", "--patch", work / "patch.json", "--dir", "1,0,0,0", "--scan", "1,1") == 0
    out = json.loads(capsys.readouterr().out)
    assert out["points"] == len(doc["points"])
    assert out["multiplicity_scan"]["max_multiplicity"] == 1
    assert out["line_density"][0]["points"] == len(doc["points"])


def test_gen_nongeneric_and_bad_radius(tmp_path):
    assert run("gen", "--radius", "3", "--shift", "0,0", "--out", tmp_path / "x") == 3
    assert run("gen", "--radius", "-1") == 2
    assert run("gen", "--radius", "abc") == 2


def test_reconstruct_and_unique(work):
    p = work / "patch.json"
    assert run("xray", "--points", p, "--dir", "1,0,0,0", "--out", work / "a.json") == 0
    assert run("xray", "--points", p, "--dir", "0,1,0,0", "--out", work / "b.json") == 0
    assert run("reconstruct", "--xray", work / "a.json", "--xray", work / "b.json", "--patch", p,
               "--out", work / "s.json") == 0
    assert fm.load_points(work / "s.json") == fm.load_points(p)
    assert run("unique", "--points", p, "--dir", "1,0,0,0", "--dir", "0,1,0,0", "--patch", p,
               "--out", work / "u.json") == 0
    assert json.loads((work / "u.json").read_text())["status"] == "ok"


def test_any_pms_and_request(work):
    pts = fm.load_points(work / "patch.json")[:6]
    fm.write(fm.point_set_doc(pts), work / "F.json")
    run("xray", "--points", work / "F.json", "--dir", "1,0,0,0", "--out", work / "a.json")
    run("xray", "--points", work / "F.json", "--dir", "0,1,0,0", "--out", work / "b.json")
    assert run("reconstruct", "--xray", work / "a.json", "--xray", work / "b.json", "--any-pms",
               "--out", work / "s.json") == 0
    doc = json.loads((work / "s.json").read_text())
    assert doc["status"] == "ok" and "witness_spec" in doc
    (work / "req.json").write_text(json.dumps({"xrays": ["a.json", "b.json"], "patch": "patch.json"}))
    assert run("reconstruct", "--request", work / "req.json", "--out", work / "r.json") == 0


def test_reconstruct_usage_errors(work):
    run("xray", "--points", work / "patch.json", "--dir", "1,0,0,0", "--out", work / "a.json")
    assert run("reconstruct", "--xray", work / "a.json", "--any-pms") == 2
    assert run("reconstruct", "--xray", work / "a.json", "--xray", work / "a.json", "--any-pms") == 2
    assert run("reconstruct", "--xray", work / "a.json", "--xray", work / "a.json") == 2
    assert run("reconstruct", "--xray", work / "missing.json", "--xray", work / "a.json", "--any-pms") == 2


def test_infeasible_reconstruction(work):
    fm.write(fm.point_set_doc([CycInt(0), CycInt(2, 0, 1, 1)]), work / "F.json")
    run("xray", "--points", work / "F.json", "--dir", "1,0,0,0", "--out", work / "a.json")
    run("xray", "--points", work / "F.json", "--dir", "0,1,0,0", "--out", work / "b.json")
    assert run("reconstruct", "--xray", work / "a.json", "--xray", work / "b.json", "--any-pms",
               "--out", work / "s.json") == 1
    assert json.loads((work / "s.json").read_text())["status"] == "infeasible"
    assert run("fit", "--points", work / "F.json", "--out", work / "fit.json") == 1


def test_nonunique(work):
    fm.write(fm.point_set_doc([CycInt(0), CycInt(1, 1, 0, 0)]), work / "d.json")
    assert run("unique", "--points", work / "d.json", "--dir", "1,0,0,0", "--dir", "0,1,0,0",
               "--out", work / "u.json") == 1
    assert json.loads((work / "u.json").read_text())["status"] == "nonunique"
    assert run("unique", "--points", work / "d.json", "--dir", "1,0,0,0") == 2


def test_fit(work):
    fm.write(fm.point_set_doc([CycInt(0), CycInt(1)]), work / "F.json")
    assert run("fit", "--points", work / "F.json", "--out", work / "fit.json") == 0
    doc = json.loads((work / "fit.json").read_text())
    assert doc["status"] == "ok" and len(doc["polygon"]) >= 3


def test_counterexample(work):
    assert run("counterexample", "--pool", "3", "--compact", "--out", work / "c.json") == 0
    doc = json.loads((work / "c.json").read_text())
    assert doc["status"] == "ok" and len(doc["F"]) == len(doc["F_prime"]) == 4
    assert run("counterexample", "--dir", "1,0,0,0", "--dir", "0,1,0,0", "--compact", "--fixed-spec",
               "--patch", work / "patch.json", "--search-radius", "20", "--out", work / "d.json") == 0
    assert run("counterexample") == 2


def test_determine_manifest(tmp_path):
    manifest = {
        "enumerator": "convex",
        "region": {"radius": 2, "patch_radius": 4},
        "directions": "u5",
        "signature_table": "sig.npy",
        "report": "report.json",
    }
    (tmp_path / "m.json").write_text(json.dumps(manifest))
    assert run("determine", "--manifest", tmp_path / "m.json") == 0
    rep = json.loads((tmp_path / "report.json").read_text())
    assert rep["status"] == "determined" and "seconds" not in rep
    table = np.load(tmp_path / "sig.npy")
    assert table.dtype == np.uint64 and table.size == rep["sets"] == rep["signature_table"]["entries"]
    assert run("determine", "--manifest", tmp_path / "m.json", "--timing", "--out", tmp_path / "t.json") == 0
    assert "seconds" in json.loads((tmp_path / "t.json").read_text())

    manifest.update({"enumerator": "card_le_k", "k": 2, "directions": {"pool": 1}})
    manifest.pop("signature_table")
    (tmp_path / "m2.json").write_text(json.dumps(manifest))
    assert run("determine", "--manifest", tmp_path / "m2.json") == 1
    assert json.loads((tmp_path / "report.json").read_text())["status"] == "counterpair"

    manifest["region"] = {"radius": 6, "patch_radius": 6}
    manifest["enumerator"] = "convex"
    (tmp_path / "m3.json").write_text(json.dumps(manifest))
    assert run("determine", "--manifest", tmp_path / "m3.json") == 2


def test_successive(work):
    pts = fm.load_points(work / "patch.json")[::3]
    fm.write(fm.point_set_doc(pts), work / "h.json")
    assert run("successive", "--hidden", work / "h.json", "--mode", "any_pms", "--out", work / "o.json") == 0
    doc = json.loads((work / "o.json").read_text())
    assert fm.points_from_json(doc["points"]) == pts and doc["n_queries"] <= 3
    assert run("successive", "--hidden", work / "h.json", "--mode", "fixed_pms", "--patch", work / "patch.json",
               "--region", "4", "--out", work / "o.json") == 0
    assert run("successive", "--hidden", work / "h.json", "--mode", "fixed_pms") == 2


def test_render(work):
    assert run("render", "--patch", work / "patch.json", "--window", "--out", work / "r.svg") == 0
    assert (work / "r.svg").read_bytes().startswith(b"<?xml")


def test_parser_errors(capsys):
    assert run("bogus") == 2
    assert run() == 2
    assert run("gen", "--help") == 0
