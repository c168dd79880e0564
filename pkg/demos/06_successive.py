"""Adaptive X-rays: choose each direction after seeing the previous answers."""

import random

from penrose_tomo.determine import default_pool, even_odd_pair, hidden_set_oracle, successive_determine
from penrose_tomo.modelset import generate_patch

patch = generate_patch(15)
hidden = sorted(random.Random(7).sample(patch.within(15), 25))
oracle = hidden_set_oracle(hidden)

a = successive_determine(oracle, "fixed_pms", patch=patch, region_radius=15)
print(f"known patch: recovered exactly = {list(a.points) == hidden} with {a.n_queries} queries")
b = successive_determine(oracle, "any_pms")
print(f"unknown model set: recovered exactly = {list(b.points) == hidden} with {b.n_queries} queries")

# the two-direction ambiguity is broken by the third, adaptive, direction
pair = even_odd_pair(default_pool(2), compact=True)
for name, S in (("F", pair.even), ("F'", pair.odd)):
    r = successive_determine(hidden_set_oracle(S), "any_pms")
    print(f"{name}: third query {r.queries[2]}, recovered = {r.points == S}")
