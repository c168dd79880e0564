import xml.etree.ElementTree as ET

from penrose_tomo.cyclotomic import CycInt
from penrose_tomo.modelset import DEFAULT_SPEC, tiling_faces
from penrose_tomo.render import RenderScene, Style, face_kind, patch_scene, render
from penrose_tomo.xray import xray

NS = "{http://www.w3.org/2000/svg}"


def test_render_is_deterministic_and_valid(patch10):
    scene = patch_scene(patch10.points, solution=patch10.within(2), window=DEFAULT_SPEC,
                        xrays=[xray(patch10.points, CycInt(1))])
    a, b = render(scene), render(scene)
    assert a == b
    root = ET.fromstring(a)
    assert root.tag == NS + "svg"
    polys = root.findall(f".//{NS}g[@id='faces']/{NS}polygon")
    assert len(polys) == len(tiling_faces(patch10.points))
    assert {p.get("class") for p in polys} == {"thick", "thin"}
    assert len(root.findall(f".//{NS}g[@id='points']/{NS}circle")) == len(patch10)
    assert len(root.findall(f".//{NS}g[@id='window']/{NS}polygon")) == 4
    assert root.find(f".//{NS}g[@id='xray0']") is not None
    assert b"-0.000000" not in a


def test_empty_scene():
    data = render(RenderScene())
    root = ET.fromstring(data)
    assert root.find(f"{NS}rect") is None
    assert not root.findall(f".//{NS}circle")


def test_style_changes_output(patch10):
    pts = patch10.within(3)
    assert render(patch_scene(pts)) != render(patch_scene(pts, style=Style(scale=10)))


def test_face_kind():
    assert face_kind((CycInt(0), CycInt(1), CycInt(1))) is None
