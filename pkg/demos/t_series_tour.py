"""Walk through the T-series: invariants, the modular ideal and its diagonal map.

    python3 demos/t_series_tour.py [p q r]
"""

import sys

from singkit.cases import diagonal_isomorphism
from singkit.catalog import t_series, t_series_class
from singkit.local_algebra import LocalAlgebra, milnor_number, tjurina_number
from singkit.modular import modular_ideal, subseries_profile

p, q, r = (int(a) for a in sys.argv[1:4]) if len(sys.argv) > 3 else (5, 4, 3)

f = t_series(p, q, r)
print(f"f = {f}  ({t_series_class(p, q, r)})")
print(f"mu = {milnor_number(f)}, tau = {tjurina_number(f)}")

data = modular_ideal(p, q, r)
print(f"\nI({p},{q},{r}) lives on {len(data.ideal.ring.variables)} parameters; "
      "after dropping the linear generators:")
for g in data.reduced.gens:
    print("   ", g)
prof = subseries_profile(p, q, r)
print("vanishing mixed coefficients:", sorted(prof.vanishing) or "none")
A = LocalAlgebra(data.reduced)
print("dim O/I =", A.dimension)

sol = diagonal_isomorphism(p, q, r)
print(f"\ntarget Q({sol.target_polynomial}) over {sol.field}")
print(sol.map)
for line in sol.certify().lines():
    print("   ", line)
