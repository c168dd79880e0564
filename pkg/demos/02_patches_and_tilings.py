"""Cut-and-project patches of a Penrose model set and their rhombus tiling."""

import sys
from pathlib import Path

from penrose_tomo.modelset import (
    DEFAULT_SPEC,
    THICK,
    NonGenericShift,
    WindowSpec,
    class_frequencies,
    generate_patch,
    rhombus_class,
    tiling_edges,
    tiling_faces,
)
from penrose_tomo.render import patch_scene, render

patch = generate_patch(10, DEFAULT_SPEC)
print(f"{len(patch)} points within radius 10 for window shift {DEFAULT_SPEC.shift_str()}")

faces = tiling_faces(patch)
thick = sum(rhombus_class(f) == THICK for f in faces)
print(f"{len(tiling_edges(patch))} unit edges, {len(faces)} rhombi: {thick} thick, {len(faces) - thick} thin")

big = generate_patch(40, DEFAULT_SPEC)
print("vertex class frequencies at radius 40:",
      {j: round(f, 4) for j, f in class_frequencies(big).items()})

try:
    generate_patch(5, WindowSpec.of(0, 0))
except NonGenericShift as exc:
    print("shift 0 is rejected:", exc)

out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("patch10.svg")
out.write_bytes(render(patch_scene(patch.points, window=DEFAULT_SPEC)))
print("drawing written to", out)
