"""
From a valid pair to four path covers
=====================================

A 2-factor S and a perfect matching T form a valid pair.  Each round moves
one cycle edge from S to T; the last cycle yields two alternatives.
"""

from difftsp.core import EdgeSet, V1, path_decomposition, valid_pair_report
from difftsp.pathcover import check_four_covers, four_path_covers, movable_edges

S = EdgeSet.from_cycle([0, 1, 2]) | EdgeSet.from_cycle([3, 4, 5]) | EdgeSet.from_cycle([6, 7, 8, 9])
T = EdgeSet([(0, 3), (1, 6), (2, 7), (4, 8), (5, 9)])
print("valid pair:", bool(valid_pair_report(S, T, 10)))

mv = movable_edges(S, T, (0, 1, 2))
print("movable edges of the first triangle:", mv.e1, mv.e2, "via T-path", mv.path)

res = four_path_covers(S, T, n=10)
for r in res.rounds:
    print("round on", r.cycle, "moves", r.moved)
for name in ("S1", "T1", "S2", "T2"):
    F = getattr(res, name)
    print(name, path_decomposition(F).paths)
print("V1(S1), V1(T1):", sorted(V1(res.S1)), sorted(V1(res.T1)))
print("invariant problems:", check_four_covers(S, T, res, 10))
