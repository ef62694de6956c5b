import numpy as np
import pytest

from difftsp.core import EdgeSet, Instance, is_tour, total_length, valid_pair_report
from difftsp.errors import PreconditionError
from difftsp.generate import random_instance
from difftsp.oracle import exact_tour
from difftsp.tour_odd import (
    FactorIsTour,
    all_guesses,
    audit_odd,
    build_context,
    extend_odd,
    inner_construction,
    reference_covers,
    tour_odd,
)
from helpers import hidden_cycle


def _on_tour(order, start, length=4):
    n = len(order)
    return tuple(order[(start + j) % n] for j in range(length))


@pytest.mark.parametrize("n", [5, 7, 9, 11, 13, 15])
def test_small_n_is_exact(n):
    inst = random_instance(n, seed=n)
    res = tour_odd(inst)
    assert res.exact and res.length == exact_tour(inst).length


def test_guard_rails():
    with pytest.raises(PreconditionError):
        tour_odd(random_instance(6, seed=0))
    inst = random_instance(17, seed=0)
    with pytest.raises(PreconditionError):
        tour_odd(inst, mode="partial")
    with pytest.raises(PreconditionError):
        tour_odd(inst, mode="fixed")
    with pytest.raises(PreconditionError):
        tour_odd(inst, mode="fixed", paths=[(0, 1, 2, 2)])
    with pytest.raises(PreconditionError):
        inner_construction(random_instance(15, seed=0), (0, 1, 2, 3))


def test_all_guesses_counts_each_path_once():
    g = list(all_guesses(7))
    assert len(g) == 7 * 6 * 5 * 4 // 2
    assert len({frozenset([frozenset(p[i:i + 2]) for i in range(3)]) for p in g}) == len(g)


def test_zero_cycle_guess_returns_factor():
    inst = hidden_cycle(17, cheap=0, dear=9)
    res = tour_odd(inst, mode="fixed", paths=[(0, 1, 2, 3)])
    assert res.length == 0 and res.candidates == (0,)
    assert isinstance(build_context(inst, 0, 1, 2, 3), FactorIsTour)


@pytest.mark.parametrize("seed", [1, 2])
def test_fixed_path_on_optimal_tour(seed):
    inst = random_instance(17, "uniform:0:50", seed)
    opt = exact_tour(inst, "min")
    wor = exact_tour(inst, "max").length
    guess = _on_tour(opt.tour, 5)
    out = inner_construction(inst, guess, audit=True)
    best = min(total_length(F, inst) for F in out.candidates)
    assert 8 * best <= 6 * opt.length + 2 * wor
    if out.ext is None:
        return
    ctx = out.ext.ctx
    v2, v3 = guess[1], guess[2]
    lS, lT, lTp = (total_length(F, inst) for F in (ctx.S, ctx.T, ctx.Tprime))
    assert 2 * lS + lT + lTp <= 3 * opt.length + inst.w(v2, v3)
    U, Up = reference_covers(opt.tour, guess)
    assert total_length(U, inst) + total_length(Up, inst) == opt.length + inst.w(v2, v3)
    assert lT <= total_length(U, inst) and lTp <= total_length(Up, inst)
    assert valid_pair_report(ctx.S, ctx.T, 17) and valid_pair_report(ctx.S, ctx.Tprime, 17)


def test_reference_covers_shape():
    tour = tuple(range(17))
    U, Up = reference_covers(tour, (0, 1, 2, 3))
    assert U.degrees()[1] == 2 and Up.degrees()[2] == 2
    assert set(U.degrees()) == set(range(17)) and set(Up.degrees()) == set(range(17))
    with pytest.raises(PreconditionError):
        reference_covers(tour, (0, 2, 1, 3))


def _square_guess_instance():
    # the guessed path 0-1-2-3 closes cheaply through (3, 0)
    inst = random_instance(17, "uniform:20:60", 11)
    W = inst.weights.copy()
    for a, b in [(0, 1), (1, 2), (2, 3), (3, 0)]:
        W[a, b] = W[b, a] = 0
    return Instance(W)


def test_four_vertex_cycle_uses_third_case():
    inst = _square_guess_instance()
    ctx = build_context(inst, 0, 1, 2, 3)
    assert ctx.small_cycle and ctx.v[0] == 3 and ctx.v[5] == 0
    ext = extend_odd(ctx, inst)
    assert ext.plain.case == 3 and ext.primed.case == 3
    for F in ext.candidates():
        assert is_tour(F, 17)
    audit_odd(ext, inst)


def _alternating_fixture():
    n = 17
    W = np.full((n, n), 10, dtype=np.int64)
    for cyc, wt in (((0, 1, 2, 3, 4, 5, 6), 1), ((7, 8, 9, 10), 0), ((11, 12, 13, 14, 15, 16), 1)):
        for i, a in enumerate(cyc):
            b = cyc[(i + 1) % len(cyc)]
            W[a, b] = W[b, a] = wt
    np.fill_diagonal(W, 0)
    return Instance(W)


def test_second_cycle_covered_alternately():
    inst = _alternating_fixture()
    base = build_context(inst, 0, 1, 2, 3)
    ring = EdgeSet.from_cycle(base.Cstarstar)
    # swap T' onto the two square edges T leaves free: same weight, nothing left uncovered
    Tp = (base.Tprime - ring) | (ring - base.T)
    assert total_length(Tp, inst) == total_length(base.Tprime, inst)
    ctx = build_context(inst, 0, 1, 2, 3, S=base.S, T=base.T, Tp=Tp)
    assert not ring - (ctx.T | ctx.Tprime)
    assert ctx.f != ctx.fprime and ctx.q in ctx.f and ctx.q in ctx.fprime
    for F, e in ((ctx.T, ctx.f), (ctx.Tprime, ctx.fprime)):
        G = F.with_edge(e)
        assert valid_pair_report(ctx.S.without_edge(e), G, 17)
    ext = extend_odd(ctx, inst)
    for F in ext.candidates():
        assert is_tour(F, 17)
    audit_odd(ext, inst)


def test_fixed_mode_reports_eight_candidates():
    inst = random_instance(17, "uniform:0:100", 1)
    out = inner_construction(inst, (0, 1, 2, 3))
    res = tour_odd(inst, mode="fixed", paths=[(0, 1, 2, 3)], audit=True)
    assert len(res.candidates) == len(out.candidates)
    assert res.length == min(res.candidates)
    if out.ext is not None:
        assert len(res.candidates) == 8 and res.audited == 1


def test_worker_count_does_not_change_result():
    inst = random_instance(17, "euclidean:100", 4)
    paths = [g for i, g in enumerate(all_guesses(17)) if i % 997 == 0][:12]
    one = tour_odd(inst, mode="fixed", paths=paths, workers=1)
    two = tour_odd(inst, mode="fixed", paths=paths, workers=3)
    assert (one.tour, one.length, one.candidates) == (two.tour, two.length, two.candidates)


@pytest.mark.parametrize("seed", range(6))
def test_random_guesses_pass_audit(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.choice([17, 19]))
    inst = random_instance(n, ("uniform:0:100", "euclidean:100", "onetwo")[seed % 3], seed)
    for _ in range(4):
        guess = tuple(int(x) for x in rng.choice(n, 4, replace=False))
        out = inner_construction(inst, guess, audit=True)
        assert all(is_tour(F, n) for F in out.candidates)
        assert out.ext is None or out.audit is not None
