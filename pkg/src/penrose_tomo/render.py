"""Deterministic SVG drawings of patches, tilings, windows and X-rays.

Geometry is decided exactly (faces, rhombus shapes); floats only appear as
printed coordinates, always with six decimals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .cyclotomic import CycInt, PlaneCoord, embed, embed_internal
from .modelset import (
    THICK,
    THIN,
    WINDOW_POLYGONS,
    WindowSpec,
    rhombus_class,
    tiling_edges,
    tiling_faces,
    window_index,
)
from .xray import XRayData

FILLS = {"thick": "#e8b04a", "thin": "#4a7fb0"}
_CLASS_COLOURS = {1: "#c0392b", 2: "#27ae60", 3: "#8e44ad", 4: "#d35400"}


@dataclass(frozen=True)
class Style:
    scale: float = 40.0
    margin: float = 20.0
    point_radius: float = 2.5
    edge_width: float = 1.0
    background: str = "#ffffff"


@dataclass
class RenderScene:
    points: tuple[CycInt, ...] = ()
    show_tiling: bool = True
    highlight: tuple[CycInt, ...] = ()
    alternative: tuple[CycInt, ...] = ()
    window: WindowSpec | None = None
    star_points: tuple[CycInt, ...] = ()
    xrays: tuple[XRayData, ...] = ()
    style: Style = field(default_factory=Style)

    @property
    def empty(self) -> bool:
        return not (self.points or self.highlight or self.alternative or self.window or self.xrays)


def _f(x: float) -> str:
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _to_xy(pt: PlaneCoord, style: Style, dx: float = 0.0) -> tuple[float, float]:
    x, y = pt.to_float()
    return x * style.scale + dx, -y * style.scale


def face_kind(face: Sequence[CycInt]) -> str | None:
    diag = rhombus_class(face)
    if diag == THICK:
        return "thick"
    if diag == THIN:
        return "thin"
    return None


def render(scene: RenderScene) -> bytes:
    st = scene.style
    body: list[str] = []
    xs: list[float] = []
    ys: list[float] = []

    def pt(p: PlaneCoord, dx: float = 0.0) -> tuple[float, float]:
        x, y = _to_xy(p, st, dx)
        xs.append(x)
        ys.append(y)
        return x, y

    if scene.points:
        pts = tuple(sorted(set(scene.points)))
        pos = {z: embed(z) for z in pts}
        if scene.show_tiling:
            body.append('<g id="faces">')
            for face in sorted(tiling_faces(pts)):
                kind = face_kind(face)
                cls = kind or "other"
                coords = " ".join(f"{_f(x)},{_f(y)}" for x, y in (pt(pos[z]) for z in face))
                body.append(f'<polygon class="{cls}" points="{coords}"/>')
            body.append("</g>")
            body.append('<g id="edges">')
            for a, b in tiling_edges(pts):
                (x1, y1), (x2, y2) = pt(pos[a]), pt(pos[b])
                body.append(f'<line x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}"/>')
            body.append("</g>")
        body.append('<g id="points">')
        for z in pts:
            x, y = pt(pos[z])
            body.append(f'<circle cx="{_f(x)}" cy="{_f(y)}" r="{_f(st.point_radius)}"/>')
        body.append("</g>")
    for name, group in (("solution", scene.highlight), ("alternative", scene.alternative)):
        if not group:
            continue
        body.append(f'<g id="{name}">')
        for z in sorted(set(group)):
            x, y = pt(embed(z))
            body.append(f'<circle class="{name}" cx="{_f(x)}" cy="{_f(y)}" r="{_f(st.point_radius * 2)}"/>')
        body.append("</g>")

    if scene.window is not None:
        # internal space drawn to the right of everything else
        offset = (max(xs) + 3 * st.scale) if xs else 0.0
        body.append('<g id="window">')
        w = scene.window.shift
        for j in range(1, 5):
            poly = [v + w for v in WINDOW_POLYGONS[j]]
            coords = " ".join(f"{_f(x)},{_f(y)}" for x, y in (pt(v, offset) for v in poly))
            body.append(f'<polygon class="w{j}" points="{coords}"/>')
        for z in sorted(set(scene.star_points)):
            j = window_index(z.class_index, scene.window)
            if j == 0:
                continue
            x, y = pt(embed_internal(z), offset)
            body.append(f'<circle class="s{j}" cx="{_f(x)}" cy="{_f(y)}" r="{_f(st.point_radius * 0.6)}"/>')
        body.append("</g>")

    if scene.xrays:
        top = (max(ys) + 2 * st.scale) if ys else 0.0
        left = min(xs) if xs else 0.0
        bar_w = st.scale * 0.25
        for k, x in enumerate(scene.xrays):
            body.append(f'<g id="xray{k}">')
            base = top + k * 3 * st.scale
            peak = max(x.counts, default=1)
            for i, n in enumerate(x.counts):
                h = 2 * st.scale * n / peak
                bx = left + i * bar_w * 1.2
                xs.extend([bx, bx + bar_w])
                ys.extend([base, base + 2 * st.scale])
                body.append(
                    f'<rect x="{_f(bx)}" y="{_f(base + 2 * st.scale - h)}" '
                    f'width="{_f(bar_w)}" height="{_f(h)}"/>'
                )
            body.append("</g>")

    if not xs:
        w = h = 2 * st.margin
        x0 = y0 = -st.margin
    else:
        x0, y0 = min(xs) - st.margin, min(ys) - st.margin
        w, h = max(xs) - min(xs) + 2 * st.margin, max(ys) - min(ys) + 2 * st.margin
    head = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(w)}" height="{_f(h)}" '
        f'viewBox="{_f(x0)} {_f(y0)} {_f(w)} {_f(h)}">',
        "<style>"
        f".thick{{fill:{FILLS['thick']};stroke:none}}"
        f".thin{{fill:{FILLS['thin']};stroke:none}}"
        ".other{fill:#dddddd;stroke:none}"
        f"line{{stroke:#333333;stroke-width:{_f(st.edge_width)}}}"
        "circle{fill:#111111}"
        ".solution{fill:#e74c3c}"
        ".alternative{fill:none;stroke:#2c3e50;stroke-width:1.5}"
        + "".join(f".w{j}{{fill:none;stroke:{c}}}.s{j}{{fill:{c}}}" for j, c in _CLASS_COLOURS.items())
        + "rect{fill:#555555}"
        "</style>",
    ]
    if body:
        head.append(f'<rect x="{_f(x0)}" y="{_f(y0)}" width="{_f(w)}" height="{_f(h)}" style="fill:{st.background}"/>')
    return ("\n".join(head + body + ["</svg>"]) + "\n").encode("utf-8")


def patch_scene(points: Iterable[CycInt], solution: Iterable[CycInt] = (),
                alternative: Iterable[CycInt] = (), window: WindowSpec | None = None,
                xrays: Sequence[XRayData] = (), style: Style | None = None) -> RenderScene:
    pts = tuple(sorted(set(points)))
    return RenderScene(
        points=pts,
        highlight=tuple(sorted(set(solution))),
        alternative=tuple(sorted(set(alternative))),
        window=window,
        star_points=pts if window is not None else (),
        xrays=tuple(xrays),
        style=style or Style(),
    )
