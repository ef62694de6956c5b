"""
Even instances
==============

Four candidate tours from a 2-factor and a perfect matching; the best one
satisfies 4 apx <= 3 opt + wor.
"""

from difftsp import exact_tour, tour_even
from difftsp.generate import random_instance

inst = random_instance(12, "uniform:0:100", seed=22)
res = tour_even(inst, audit=True)
opt = exact_tour(inst, "min").length
wor = exact_tour(inst, "max").length

print("candidate lengths", res.candidates)
print("returned", res.length, res.tour)
print("opt", opt, "wor", wor)
print("4 apx =", 4 * res.length, "<= 3 opt + wor =", 3 * opt + wor)

ext = res.extension
print("final edges p1..p4:", ext.p, "closing case for T-side:", ext.caseB)
print("audit:", res.audit.to_dict())

# a sweep over the three weight regimes
worst = None
for seed in range(60):
    dist = ("uniform:0:100", "euclidean:100", "onetwo")[seed % 3]
    inst = random_instance(10, dist, seed)
    r = tour_even(inst)
    o, w = exact_tour(inst, "min").length, exact_tour(inst, "max").length
    rho = 1 if w == o else (w - r.length) / (w - o)
    worst = rho if worst is None else min(worst, rho)
print("worst ratio over 60 instances with n=10:", round(worst, 4))
