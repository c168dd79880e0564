"""Even/odd subset sums: two sets that no m directions can tell apart."""

from penrose_tomo.determine import default_pool, embed_pair_in_common_pms, even_odd_pair
from penrose_tomo.modelset import DEFAULT_SPEC
from penrose_tomo.xray import xray

for m in (2, 3, 4):
    U = default_pool(m)
    pair = even_odd_pair(U, compact=True)
    same = all(xray(pair.even, u) == xray(pair.odd, u) for u in U)
    fit = embed_pair_in_common_pms(pair.even, pair.odd, 30)
    print(f"m={m}: |F| = |F'| = {len(pair.even)}, equal X-rays: {same}, "
          f"common model set: {fit is not None}")

pair = even_odd_pair(default_pool(3), compact=True)
hit = embed_pair_in_common_pms(pair.even, pair.odd, 30, spec=DEFAULT_SPEC)
print("translate placing both sets inside the default model set:", hit.translate if hit else None)
