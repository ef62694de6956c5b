"""
Shortest and longest tours, and the differential ratio
======================================================

Held-Karp gives both extremes exactly; the ratio
(wor - apx) / (wor - opt) is kept as a fraction.
"""

import numpy as np

from difftsp import Instance, exact_tour
from difftsp.generate import random_instance
from difftsp.oracle import diff_report, enumerate_structures
from difftsp.core import total_length

inst = random_instance(12, "euclidean:100", seed=3)
opt = exact_tour(inst, "min")
wor = exact_tour(inst, "max")
print("shortest", opt.length, opt.tour)
print("longest ", wor.length, wor.tour)

# a naive tour: visit the vertices in index order
naive = total_length([(i, (i + 1) % 12) for i in range(12)], inst)
rep = diff_report(inst, naive)
print("index-order tour", naive, "ratio", rep.rho, "=", float(rep.rho))

# the ratio does not move under l -> a*l + b
W = 7 * inst.weights + 3
np.fill_diagonal(W, 0)
scaled = Instance(W)
print("after 7l+3:", diff_report(scaled, total_length([(i, (i + 1) % 12) for i in range(12)], scaled)).rho)

# the enumerators used as ground truth in the tests
for kind, n in [("tours", 6), ("perfect_matchings", 6), ("two_factors", 6)]:
    print(kind, n, sum(1 for _ in enumerate_structures(n, kind)))
