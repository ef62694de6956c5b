"""
Exact matchings and 2-factors
=============================

Minimum perfect matchings, minimum 2-factors and the constrained variants
used by the tour constructions, checked against brute force.
"""

import numpy as np

from difftsp import Instance
from difftsp.matching import (
    FactorSpec,
    min_2factor,
    min_2factor_containing_path3,
    min_constrained_path_cover,
    min_weight_factor,
    min_weight_perfect_matching,
)
from difftsp.oracle import brute_min
from difftsp.generate import random_instance

# two unit triangles joined by edges of length 5
W = np.full((6, 6), 5)
for a, b in [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]:
    W[a, b] = W[b, a] = 1
np.fill_diagonal(W, 0)
inst = Instance(W, name="two-triangles")

pm = min_weight_perfect_matching(inst, certify=True)
print("perfect matching", pm.edges.edges, "weight", pm.weight)
print("brute force     ", brute_min(inst, "perfect_matchings"))

f = min_2factor(inst)
print("2-factor", f.edges.edges, "weight", f.weight)

# forcing a cross edge makes the cheapest 2-factor a single hexagon
forced = min_weight_factor(inst, FactorSpec.uniform(6, 2, forced=[(0, 3)]))
print("with (0,3) forced:", forced.weight)

p = min_2factor_containing_path3(inst, 0, 1, 2, 3)
print("through path 0-1-2-3:", p.weight)

# odd instances: a 3-vertex path plus a matching of everything else
odd = random_instance(9, "uniform:0:30", seed=4)
T = min_constrained_path_cover(odd, 2, 5, 7)
print("constrained cover on n=9:", sorted(T.edges), "weight", T.weight)
