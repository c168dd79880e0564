"""Reconstruct a subset of a patch from two X-rays, then ask if it is unique."""

import random

from penrose_tomo.cyclotomic import ZETA, CycInt, Direction
from penrose_tomo.modelset import generate_patch
from penrose_tomo.tomo import build_grid, consistency_any_pms, reconstruct, uniqueness
from penrose_tomo.xray import xray

patch = generate_patch(12)
F = random.Random(3).sample(list(patch.points), 60)
u1, u2 = Direction(CycInt(1)), Direction(ZETA)
x1, x2 = xray(F, u1), xray(F, u2)
print(f"|F| = {len(F)}; {len(x1.lines)} lines along u1, {len(x2.lines)} along u2")

grid = build_grid(x1, x2, admit=lambda z: z in patch)
print(f"candidate grid: {len(grid.cells)} integral cells, {len(grid.allowed)} inside the patch")
sol = reconstruct(grid, x1, x2)
print("reconstruction has the same X-rays:", xray(sol.points, u1) == x1 and xray(sol.points, u2) == x2)
print("reconstruction equals F:", set(sol.points) == set(F))

res = uniqueness(F, u1, u2, admit=lambda z: z in patch)
if res.unique:
    print("F is the only subset of the patch with these two X-rays")
else:
    moved = set(F) ^ set(res.witness)
    print(f"another subset has the same X-rays; they differ in {len(moved)} points")

small = F[:5]
found = consistency_any_pms(xray(small, u1), xray(small, u2))
print("with the model set left open, a solution exists in the window", found.spec.shift_str())
