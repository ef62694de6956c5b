"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

The full-mode odd run at n = 17 takes minutes per instance and only runs
when ``DIFFTSP_SLOW=1`` is set.
"""

import hashlib
import json
import os
import time
from fractions import Fraction

import numpy as np
import pytest

from difftsp.cli import main
from difftsp.core import EdgeSet, total_length, valid_pair_report
from difftsp.generate import random_instance
from difftsp.io import dump_native, dump_tsplib, parse_native, parse_tsplib
from difftsp.matching import (
    FactorSpec,
    min_2factor_containing_path3,
    min_constrained_path_cover,
    min_weight_factor,
    min_weight_perfect_matching,
)
from difftsp.oracle import DiffReport, enumerate_structures, exact_tour
from difftsp.pathcover import check_four_covers, four_path_covers
from difftsp.tour_even import tour_even
from difftsp.tour_odd import inner_construction, reference_covers, tour_odd
from helpers import REGIMES, random_pair_candidate, structure_array, weights_of

THREE_QUARTERS = Fraction(3, 4)


@pytest.fixture
def verdict(capsys):
    def emit(num: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n[criterion {num:2d}] {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, f"criterion {num}: {detail}"

    return emit


def test_criterion_01_matching_vs_enumeration(verdict):
    start = time.perf_counter()
    bad = 0
    for i in range(300):
        n = (4, 6, 8, 10)[i % 4]
        inst = random_instance(n, "uniform:0:100", 100 + i)
        got = min_weight_perfect_matching(inst).weight
        want = int(weights_of(structure_array(n, "perfect_matchings"), inst).min())
        bad += got != want
    took = time.perf_counter() - start
    verdict(1, bad == 0 and took < 10, f"300 instances, {bad} mismatches, {took:.2f}s (limit 10s)")


def test_criterion_02_two_factor_vs_enumeration(verdict):
    start = time.perf_counter()
    bad = 0
    for i in range(200):
        n = (5, 6, 7, 8)[i % 4]
        inst = random_instance(n, "uniform:0:100", 200 + i)
        got = min_weight_factor(inst, FactorSpec.uniform(n, 2)).weight
        want = int(weights_of(structure_array(n, "two_factors"), inst).min())
        bad += got != want
    took = time.perf_counter() - start
    verdict(2, bad == 0 and took < 30, f"200 instances, {bad} mismatches, {took:.2f}s (limit 30s)")


def _has_edges(arr, edges):
    mask = np.ones(len(arr), dtype=bool)
    for u, v in edges:
        mask &= ((arr[..., 0] == u) & (arr[..., 1] == v)).any(axis=1)
    return mask


def test_criterion_03_constrained_factors(verdict):
    start = time.perf_counter()
    bad = 0
    for i in range(100):
        n = (7, 9)[i % 2]
        inst = random_instance(n, "uniform:0:100", 300 + i)
        rng = np.random.default_rng(300 + i)
        v1, v2, v3, v4 = (int(x) for x in rng.choice(n, 4, replace=False))
        arr = structure_array(n, "two_factors")
        path = [tuple(sorted(e)) for e in ((v1, v2), (v2, v3), (v3, v4))]
        want = int(weights_of(arr[_has_edges(arr, path)], inst).min())
        bad += min_2factor_containing_path3(inst, v1, v2, v3, v4).weight != want
        # path covers with (v1,v2),(v2,v3) and every other vertex of degree one
        rest = [x for x in range(n) if x not in (v1, v2, v3)]
        best = None
        for M in enumerate_structures(len(rest), "perfect_matchings"):
            F = EdgeSet([(v1, v2), (v2, v3)] + [(rest[a], rest[b]) for a, b in M])
            val = total_length(F, inst)
            best = val if best is None else min(best, val)
        bad += min_constrained_path_cover(inst, v1, v2, v3).weight != best
    took = time.perf_counter() - start
    verdict(3, bad == 0, f"100 instances x 2 constrained problems, {bad} mismatches, {took:.2f}s")


def _even_instances():
    for i in range(500):
        yield random_instance((6, 8, 10, 12)[i % 4], REGIMES[i % 3], 1000 + i)


@pytest.fixture(scope="module")
def even_runs():
    start = time.perf_counter()
    runs = []
    for inst in _even_instances():
        res = tour_even(inst, audit=True)
        opt, wor = exact_tour(inst, "min").length, exact_tour(inst, "max").length
        runs.append((inst, res, opt, wor))
    return runs, time.perf_counter() - start


def test_criterion_04_even_guarantee(verdict, even_runs):
    runs, took = even_runs
    fails = sum(4 * res.length > 3 * opt + wor for _, res, opt, wor in runs)
    verdict(4, fails == 0 and took < 120, f"500 instances, {fails} violations of 4apx <= 3opt+wor, {took:.1f}s (limit 120s)")


def test_criterion_05_even_audits(verdict, even_runs):
    runs, _ = even_runs
    audited = bad = 0
    for inst, res, _, _ in runs:
        if res.factor_is_tour:
            continue
        audited += 1
        a = res.audit
        lST = min_weight_factor(inst, FactorSpec.uniform(inst.n, 2)).weight + min_weight_perfect_matching(inst).weight
        ok = (
            a is not None
            and a.n_cycles in (1, 2)
            and a.candidate_sum == 2 * lST + a.length_C
            and a.candidate_sum == sum(res.candidates)
        )
        bad += not ok
    verdict(5, bad == 0, f"{audited} audited runs (others had a tour as 2-factor), {bad} failures")


def test_criterion_06_four_path_covers(verdict):
    rng = np.random.default_rng(6)
    done = bad = tries = 0
    while done < 500:
        tries += 1
        n = int(rng.integers(5, 17))
        S, T = random_pair_candidate(rng, n)
        if not valid_pair_report(S, T, n):
            continue
        done += 1
        res = four_path_covers(S, T, n=n)
        bad += bool(check_four_covers(S, T, res, n))
    verdict(6, bad == 0, f"500 valid pairs ({tries} candidates drawn), {bad} with broken invariants")


def test_criterion_07_small_odd_exact(verdict):
    start = time.perf_counter()
    bad = 0
    for n in (5, 7, 9, 11, 13, 15):
        for j in range(20):
            inst = random_instance(n, REGIMES[j % 3], 7000 + 100 * n + j)
            bad += tour_odd(inst).length != exact_tour(inst, "min").length
    took = time.perf_counter() - start
    verdict(7, bad == 0 and took < 60, f"120 instances, {bad} mismatches, {took:.1f}s (limit 60s)")


@pytest.fixture(scope="module")
def odd_fixed_runs():
    start = time.perf_counter()
    runs = []
    for i in range(20):
        inst = random_instance(17, "uniform:0:50", 8000 + i)
        opt = exact_tour(inst, "min")
        wor = exact_tour(inst, "max").length
        for start_at in (0, 6, 11):
            guess = tuple(opt.tour[(start_at + j) % 17] for j in range(4))
            out = inner_construction(inst, guess, audit=True)
            runs.append((inst, guess, opt, wor, out))
    return runs, time.perf_counter() - start


def test_criterion_08_odd_fixed_paths(verdict, odd_fixed_runs):
    runs, took = odd_fixed_runs
    fails = []
    for inst, guess, opt, wor, out in runs:
        best = min(total_length(F, inst) for F in out.candidates)
        if 8 * best > 6 * opt.length + 2 * wor:
            fails.append((inst.name, guess, "guarantee"))
        if out.ext is None:
            continue
        ctx = out.ext.ctx
        v2, v3 = guess[1], guess[2]
        lhs = 2 * total_length(ctx.S, inst) + total_length(ctx.T, inst) + total_length(ctx.Tprime, inst)
        if lhs > 3 * opt.length + inst.w(v2, v3):
            fails.append((inst.name, guess, "cover bound"))
        U, Up = reference_covers(opt.tour, guess)
        if total_length(U, inst) + total_length(Up, inst) != opt.length + inst.w(v2, v3):
            fails.append((inst.name, guess, "reference covers"))
        if out.audit is None:
            fails.append((inst.name, guess, "audit"))
    built = sum(out.ext is not None for *_, out in runs)
    verdict(
        8,
        not fails and took < 300,
        f"60 guesses on 20 instances ({built} built eight candidates), {len(fails)} failures, {took:.1f}s (limit 300s)",
    )


@pytest.mark.skipif(os.environ.get("DIFFTSP_SLOW") != "1", reason="full mode at n=17 takes minutes; set DIFFTSP_SLOW=1")
def test_criterion_09_odd_full_mode(verdict):
    start = time.perf_counter()
    workers = os.cpu_count() or 1
    fails = 0
    for i in range(3):
        inst = random_instance(17, "uniform:0:100", 9000 + i)
        res = tour_odd(inst, mode="full", workers=workers)
        opt, wor = exact_tour(inst, "min").length, exact_tour(inst, "max").length
        fails += 8 * res.length > 6 * opt + 2 * wor
    took = time.perf_counter() - start
    verdict(9, fails == 0 and took < 1800, f"3 instances, {fails} violations, {took:.0f}s on {workers} workers (limit 1800s)")


def test_criterion_10_ratio_reports(verdict, even_runs, odd_fixed_runs):
    bad = 0
    for _, res, opt, wor in even_runs[0]:
        rep = DiffReport.of(opt, wor, res.length)
        bad += (rep.rho >= THREE_QUARTERS) != (4 * res.length <= 3 * opt + wor) or rep.rho < THREE_QUARTERS
    for inst, _, opt, wor, out in odd_fixed_runs[0]:
        best = min(total_length(F, inst) for F in out.candidates)
        rep = DiffReport.of(opt.length, wor, best)
        bad += rep.rho < THREE_QUARTERS
    verdict(10, bad == 0, f"560 ratios checked as exact fractions, {bad} below 3/4")


def _suite_digest(threads: int, tmp_path, capsys) -> str:
    h = hashlib.sha256()
    for i in range(12):
        inst = random_instance((8, 10, 12)[i % 3], REGIMES[i % 3], 1100 + i)
        res = tour_even(inst)
        h.update(repr((res.tour, res.length, res.candidates)).encode())
    path = tmp_path / f"odd17-{threads}.json"
    path.write_text(dump_native(random_instance(17, "uniform:0:100", 1)))
    argv = ["solve", "--in", str(path), "--mode", "fixed", "--threads", str(threads), "--seed", "1",
            "--paths", "0,1,2,3;3,4,5,6;7,8,9,10;11,12,13,14;1,5,9,13;2,6,10,14", "--audit", "--oracle"]
    assert main(argv) == 0
    rep = json.loads(capsys.readouterr().out)
    rep.pop("wall_time_s")
    rep["instance"] = "odd17"
    h.update(json.dumps(rep, sort_keys=True).encode())
    return h.hexdigest()


def test_criterion_11_determinism(verdict, tmp_path, capsys):
    a = _suite_digest(1, tmp_path, capsys)
    b = _suite_digest(1, tmp_path, capsys)
    c = _suite_digest(3, tmp_path, capsys)
    verdict(11, a == b == c, f"report digests at 1, 1 and 3 workers: {a[:12]} {b[:12]} {c[:12]}")


def test_criterion_12_file_round_trips(verdict, tmp_path, capsys):
    bad = 0
    for i in range(100):
        out = tmp_path / f"g{i}.json"
        dist = ("uniform:0:100", "euclidean:200", "onetwo")[i % 3]
        assert main(["gen", "--n", str(3 + i % 15), "--dist", dist, "--seed", str(i), "--out", str(out)]) == 0
        text = out.read_text()
        inst = parse_native(text)
        bad += dump_native(inst) != text
        bad += not np.array_equal(parse_tsplib(dump_tsplib(inst, "FULL_MATRIX")).weights, inst.weights)
    capsys.readouterr()
    verdict(12, bad == 0, f"100 generated files, {bad} round-trip differences")
