"""Exhaustive determination checks on small regions.

Each enumerated set gets a random additive signature of its X-rays; only
exactly verified collisions count as counterexamples.
"""

from penrose_tomo.determine import (
    CardinalityAtMost,
    check_determination,
    default_pool,
    enumerate_convex,
    u5_directions,
)
from penrose_tomo.modelset import generate_patch

patch = generate_patch(7)
region = patch.within(2)
for m in (2, 3, 4):
    res = check_determination(CardinalityAtMost(region, 3), default_pool(m))
    print(f"sets of size <= 3 in {len(region)} points, {m} directions: "
          f"{'determined' if res.determined else 'counterpair found'}")

enum = enumerate_convex(patch, 3)
res = check_determination(enum, u5_directions())
print(f"{res.sets} convex sets in a {len(enum.points)}-point region, four directions: "
      f"{'determined' if res.determined else 'counterpair'} ({res.seconds:.1f} s)")
