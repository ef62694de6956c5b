"""Exact reference answers: Held-Karp shortest/longest tours, exhaustive
enumerators for tiny instances and the differential ratio."""

from __future__ import annotations

import itertools
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Optional

import numpy as np

from .core import EdgeSet, Instance, total_length
from .errors import PreconditionError, ResourceGuardError

DEFAULT_CAP = 20
_INF = 1 << 62

Objective = Literal["min", "max"]


@dataclass(frozen=True)
class ExactTour:
    length: int
    tour: tuple[int, ...]


def _layers(m: int) -> list[np.ndarray]:
    masks = np.arange(1 << m, dtype=np.int64)
    pop = np.bitwise_count(masks)
    return [masks[pop == c] for c in range(m + 1)]


def exact_tour(inst: Instance, objective: Objective = "min", cap: Optional[int] = DEFAULT_CAP) -> ExactTour:
    """Shortest (``"min"``) or longest (``"max"``) tour by subset dynamic programming.

    The tour starts at vertex 0.  Memory grows as ``n * 2**(n-1)``, so
    instances above ``cap`` vertices are refused unless ``cap=None``.
    """
    if objective not in ("min", "max"):
        raise PreconditionError(f"objective must be 'min' or 'max', got {objective!r}")
    n = inst.n
    if cap is not None and n > cap:
        raise ResourceGuardError(f"exact tour DP refused for n={n} > cap {cap}")
    W = inst.weights
    if int(W.max()) * n >= 1 << 61:
        raise ResourceGuardError("weights too large for the int64 DP")
    sign = 1 if objective == "min" else -1
    Ws = sign * W
    m = n - 1
    full = (1 << m) - 1
    # dp[mask, j]: best path 0 -> ... -> j+1 visiting exactly the vertices of mask (bit k = vertex k+1)
    dp = np.full((1 << m, m), _INF, dtype=np.int64)
    par = np.full((1 << m, m), -1, dtype=np.int8 if m < 127 else np.int16)
    inner = Ws[1:, 1:]
    for j in range(m):
        dp[1 << j, j] = Ws[0, j + 1]
    for layer in _layers(m)[2:]:
        for j in range(m):
            bit = 1 << j
            masks = layer[(layer & bit) != 0]
            prev = masks ^ bit
            cand = dp[prev] + inner[:, j]
            k = np.argmin(cand, axis=1)
            dp[masks, j] = cand[np.arange(len(masks)), k]
            par[masks, j] = k
    closing = dp[full] + Ws[1:, 0]
    j = int(np.argmin(closing))
    best = int(closing[j])
    order = []
    mask = full
    while j >= 0:
        order.append(j + 1)
        pj = int(par[mask, j])
        mask ^= 1 << j
        j = pj if mask else -1
    order.append(0)
    order.reverse()
    if order[1] > order[-1]:
        order = [0] + order[:0:-1]
    length = sign * best
    if length != total_length(EdgeSet.from_cycle(order), inst):
        raise AssertionError("DP reconstruction disagrees with its value")
    return ExactTour(length, tuple(order))


def _tours(n: int) -> Iterator[EdgeSet]:
    for perm in itertools.permutations(range(1, n)):
        if perm[0] < perm[-1]:
            yield EdgeSet.from_cycle((0,) + perm)


def _matchings(verts: Sequence[int]) -> Iterator[list[tuple[int, int]]]:
    if not verts:
        yield []
        return
    a = verts[0]
    for i in range(1, len(verts)):
        rest = verts[1:i] + verts[i + 1:]
        for m in _matchings(rest):
            yield [(a, verts[i])] + m


def _cycles_on(vs: Sequence[int]) -> Iterator[tuple[int, ...]]:
    head, rest = vs[0], vs[1:]
    for perm in itertools.permutations(rest):
        if perm[0] < perm[-1]:
            yield (head,) + perm


def _two_factors(verts: tuple[int, ...]) -> Iterator[list[tuple[int, ...]]]:
    if not verts:
        yield []
        return
    v, others = verts[0], verts[1:]
    for size in range(2, len(others) + 1):
        if 0 < len(others) - size < 3:
            continue
        for chosen in itertools.combinations(others, size):
            left = tuple(x for x in others if x not in chosen)
            for cyc in _cycles_on((v,) + chosen):
                for tail in _two_factors(left):
                    yield [cyc] + tail


_GUARDS = {"tours": 10, "perfect_matchings": 10, "two_factors": 8}


def enumerate_structures(n_or_inst, kind: str, limit: Optional[int] = None) -> Iterator[EdgeSet]:
    """Every tour, perfect matching or 2-factor on ``n`` vertices, once each.

    Accepts an ``Instance`` or a bare vertex count.  Enumeration sizes explode
    quickly, so ``n`` is capped per kind (10, 10, 8) unless ``limit`` raises it.
    """
    n = n_or_inst.n if isinstance(n_or_inst, Instance) else int(n_or_inst)
    if kind not in _GUARDS:
        raise PreconditionError(f"unknown structure kind {kind!r}")
    cap = _GUARDS[kind] if limit is None else limit
    if n > cap:
        raise ResourceGuardError(f"enumerating {kind} refused for n={n} > {cap}")
    verts = tuple(range(n))
    if kind == "tours":
        if n >= 3:
            yield from _tours(n)
    elif kind == "perfect_matchings":
        if n % 2 == 0:
            for m in _matchings(verts):
                yield EdgeSet(m)
    else:
        for cycles in _two_factors(verts):
            out: set = set()
            for c in cycles:
                out |= EdgeSet.from_cycle(c).as_frozenset()
            yield EdgeSet._raw(frozenset(out))


def brute_min(inst: Instance, kind: str, limit: Optional[int] = None, where=None) -> Optional[int]:
    """Minimum length over an enumerated family, optionally filtered by ``where``."""
    best = None
    rows = inst.rows
    for F in enumerate_structures(inst, kind, limit):
        if where is not None and not where(F):
            continue
        val = sum(rows[u][v] for u, v in F)
        if best is None or val < best:
            best = val
    return best


def differential_ratio(opt: int, wor: int, apx: int) -> Fraction:
    """``(wor - apx) / (wor - opt)`` as an exact fraction; 1 when ``wor == opt``."""
    if not opt <= apx <= wor:
        raise PreconditionError(f"need opt <= apx <= wor, got {opt}, {apx}, {wor}")
    if wor == opt:
        return Fraction(1)
    return Fraction(wor - apx, wor - opt)


@dataclass(frozen=True)
class DiffReport:
    opt: int
    wor: int
    apx: int
    rho: Fraction

    @classmethod
    def of(cls, opt: int, wor: int, apx: int) -> "DiffReport":
        return cls(opt, wor, apx, differential_ratio(opt, wor, apx))

    def to_dict(self) -> dict:
        return {
            "opt": self.opt,
            "wor": self.wor,
            "apx": self.apx,
            "rho": f"{self.rho.numerator}/{self.rho.denominator}",
        }


def diff_report(inst: Instance, apx: int, cap: Optional[int] = DEFAULT_CAP) -> DiffReport:
    """Compare a tour length against the exact shortest and longest tours."""
    opt = exact_tour(inst, "min", cap).length
    wor = exact_tour(inst, "max", cap).length
    return DiffReport.of(opt, wor, apx)
