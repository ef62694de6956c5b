import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from difftsp.core import EdgeSet, Instance, classify, total_length
from difftsp.errors import PreconditionError, ResourceGuardError
from difftsp.generate import random_instance
from difftsp.oracle import DiffReport, diff_report, differential_ratio, enumerate_structures, exact_tour
from helpers import two_triangles


def _perm_extremes(inst):
    n = inst.n
    lengths = [
        total_length(EdgeSet.from_cycle((0,) + p), inst) for p in itertools.permutations(range(1, n))
    ]
    return min(lengths), max(lengths)


def test_all_ones_k4():
    inst = Instance(np.ones((4, 4), dtype=int) - np.eye(4, dtype=int))
    assert exact_tour(inst, "min").length == 4
    assert exact_tour(inst, "max").length == 4


def test_two_triangles_extremes():
    inst = two_triangles()
    assert exact_tour(inst, "min").length == 14
    assert exact_tour(inst, "min").tour == (0, 1, 2, 3, 4, 5)
    assert exact_tour(inst, "max").length == 30


@pytest.mark.parametrize("seed", range(4))
def test_matches_permutations_n8(seed):
    inst = random_instance(8, seed=seed)
    lo, hi = _perm_extremes(inst)
    assert exact_tour(inst, "min").length == lo
    assert exact_tour(inst, "max").length == hi


@given(st.integers(3, 7), st.integers(0, 10**6), st.sampled_from(["uniform:0:100", "onetwo", "euclidean:30"]))
def test_matches_permutations_small(n, seed, dist):
    inst = random_instance(n, dist, seed)
    lo, hi = _perm_extremes(inst)
    for obj, want in (("min", lo), ("max", hi)):
        res = exact_tour(inst, obj)
        assert res.length == want
        assert res.tour[0] == 0 and sorted(res.tour) == list(range(n))
        assert total_length(EdgeSet.from_cycle(res.tour), inst) == want


@given(st.integers(4, 11), st.integers(0, 10**6))
def test_longest_tour_by_complement(n, seed):
    # the longest tour for W is the shortest for M - W off the diagonal
    inst = random_instance(n, "uniform:0:60", seed)
    M = 60
    flipped = M - inst.weights
    np.fill_diagonal(flipped, 0)
    short = exact_tour(Instance(flipped), "min").length
    assert exact_tour(inst, "max").length == n * M - short


def test_cap_and_objective_guards():
    inst = random_instance(12, seed=0)
    with pytest.raises(ResourceGuardError):
        exact_tour(inst, cap=10)
    with pytest.raises(PreconditionError):
        exact_tour(inst, "median")


@pytest.mark.parametrize(
    "n,kind,count",
    [(4, "perfect_matchings", 3), (6, "perfect_matchings", 15), (5, "tours", 12), (6, "tours", 60),
     (5, "two_factors", 12), (6, "two_factors", 70), (7, "two_factors", 465), (5, "perfect_matchings", 0)],
)
def test_enumeration_counts(n, kind, count):
    items = list(enumerate_structures(n, kind))
    assert len(items) == count
    assert len(set(items)) == count


def test_enumerated_structures_have_their_shape():
    inst = random_instance(6, seed=2)
    for F in enumerate_structures(inst, "tours"):
        assert classify(F, inst).is_tour
    for F in enumerate_structures(inst, "two_factors"):
        assert classify(F, inst).is_k_factor(2)
    for F in enumerate_structures(inst, "perfect_matchings"):
        assert classify(F, inst).is_k_factor(1)


def test_enumeration_guard():
    with pytest.raises(ResourceGuardError):
        next(enumerate_structures(9, "two_factors"))
    with pytest.raises(PreconditionError):
        next(enumerate_structures(5, "spanning_trees"))


def test_differential_ratio_values():
    assert differential_ratio(10, 20, 12) == Fraction(4, 5)
    assert differential_ratio(10, 20, 10) == 1
    assert differential_ratio(10, 10, 10) == 1
    with pytest.raises(PreconditionError):
        differential_ratio(10, 20, 25)


def test_diff_report():
    rep = DiffReport.of(10, 20, 12)
    assert rep.to_dict() == {"opt": 10, "wor": 20, "apx": 12, "rho": "4/5"}
    r = diff_report(two_triangles(), 14)
    assert (r.opt, r.wor, r.rho) == (14, 30, 1)


@given(st.integers(0, 10**6), st.integers(1, 50), st.integers(0, 20))
def test_ratio_invariant_under_affine_maps(seed, a, b):
    inst = random_instance(6, "uniform:0:30", seed)
    tour = EdgeSet.from_cycle([0, 2, 4, 1, 3, 5])
    apx = total_length(tour, inst)
    base = diff_report(inst, apx).rho
    W = a * inst.weights + b
    np.fill_diagonal(W, 0)
    other = Instance(W)
    assert diff_report(other, total_length(tour, other)).rho == base
