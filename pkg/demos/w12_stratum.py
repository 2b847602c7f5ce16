"""The W12 modular stratum: embedding, invariants, and two ways to an isomorphism."""

import time

from singkit.catalog import load_example
from singkit.isomorphy import find_surjection, isomorphy_prechecks, verify
from singkit.local_algebra import LocalAlgebra, minimal_embedding, milnor_number
from singkit.polynomial import jacobian_ideal

ex = load_example("w12")
f = ex.polynomial
print("f =", f, " mu =", milnor_number(f))

emb = minimal_embedding(ex.full_stratum)
print(f"\nthe stratum ideal has {len(ex.full_stratum.gens)} generators; "
      f"it embeds in {emb.variables} as")
for g in emb.ideal.gens:
    print("   ", g)

O_M = LocalAlgebra(ex.stratum)
print("dim O_M =", O_M.dimension, " Hilbert function:", O_M.hilbert_series())

B = jacobian_ideal(f)
pre = isomorphy_prechecks(ex.stratum, B)
print("prechecks against Q(f):", "ok" if pre.ok else pre.failures())

print("\nthe printed map, over", ex.map.field)
print(ex.map)
print("verdict:", verify(ex.map, ex.stratum, B).verdict)

t0 = time.monotonic()
res = find_surjection(ex.stratum, B, shape=ex.shape)
print(f"\nsearch with the sparsity shape ({time.monotonic() - t0:.2f}s), over {res.map.field}")
print(res.map)
print("verdict:", res.report.verdict)
