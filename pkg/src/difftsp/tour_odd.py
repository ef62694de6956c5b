"""3/4-differential approximation for instances with an odd number of vertices.

For every guessed 3-edge path ``v1-v2-v3-v4`` the solver builds a minimum
2-factor ``S`` through the path and two path covers ``T`` (path ``v1-v2-v3``
plus a matching) and ``T'`` (path ``v2-v3-v4`` plus a matching).  Steered
path-cover splits of ``(S, T)`` and ``(S, T')`` give eight candidate tours.
Small instances (``n < 17``) are solved exactly instead.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .core import (
    EdgeSet,
    Instance,
    V1,
    canonical_tour,
    cycles_of,
    is_tour,
    total_length,
    valid_pair_report,
)
from .errors import AuditError, InternalInvariantError, PreconditionError
from .matching.factors import min_2factor_containing_path3, min_constrained_path_cover
from .oracle import exact_tour
from .pathcover import FourCoversResult, Steering, four_path_covers
from .tour_even import (
    TourResult,
    best_tour,
    chain,
    close_two_cycles,
    endpoint_map,
    orient_first,
    shared_paths,
    zigzag_A,
)

EXACT_BELOW = 17

Guess = tuple[int, int, int, int]


@dataclass(frozen=True)
class OddContext:
    """Everything fixed by one guessed path before the path-cover splits."""

    v: tuple[int, int, int, int, int, int]  # v0 .. v5
    S: EdgeSet
    T: EdgeSet
    Tprime: EdgeSet
    Cstar: tuple[int, ...]
    Cstarstar: tuple[int, ...]
    f: tuple[int, int]
    fprime: tuple[int, int]
    q: int

    @property
    def small_cycle(self) -> bool:
        """The cycle through the guessed path has exactly four vertices."""
        return len(self.Cstar) == 4

    def side_labels(self, primed: bool) -> tuple[int, int, int, int]:
        """``(p1, p2, p3, p4)`` of the prescribed final edge pair on each side."""
        v0, v1, v2, v3, v4, v5 = self.v
        return (v1, v2, v4, v5) if primed else (v4, v3, v1, v0)


@dataclass(frozen=True)
class SideExtension:
    covers: FourCoversResult
    A1: EdgeSet
    A2: EdgeSet
    B1: EdgeSet
    B2: EdgeSet
    case: int
    k: int
    d: int
    xy: tuple[tuple[int, int], ...]
    zw: tuple[tuple[int, int], ...]

    def candidates(self) -> tuple[EdgeSet, EdgeSet, EdgeSet, EdgeSet]:
        c = self.covers
        return (c.S1 | self.A1, c.S2 | self.A2, c.T1 | self.B1, c.T2 | self.B2)


@dataclass(frozen=True)
class OddExtension:
    ctx: OddContext
    plain: SideExtension
    primed: SideExtension

    def candidates(self) -> tuple[EdgeSet, ...]:
        return self.plain.candidates() + self.primed.candidates()


@dataclass(frozen=True)
class FactorIsTour:
    """The 2-factor through the guessed path is already a tour."""

    S: EdgeSet


def _neighbour_off(cycle: Sequence[int], v: int, avoid: int) -> int:
    i = cycle.index(v)
    a, b = cycle[i - 1], cycle[(i + 1) % len(cycle)]
    return b if a == avoid else a


def _pick_f(Cstarstar: Sequence[int], T: EdgeSet, Tp: EdgeSet, n: int) -> tuple[tuple[int, int], tuple[int, int], int]:
    ring = EdgeSet.from_cycle(Cstarstar)
    free = ring - (T | Tp)
    if free:
        f = free.edges[0]
        return f, f, f[0]
    for f in ring - T:
        for q in f:
            for fp in ring.incident(q):
                if fp in Tp:
                    continue
                return f, fp, q
    raise InternalInvariantError("no admissible first edges on the second cycle")


def build_context(inst: Instance, v1: int, v2: int, v3: int, v4: int, S: Optional[EdgeSet] = None, T=None, Tp=None):
    """Factor, covers and labels for one guessed path, or ``FactorIsTour``."""
    n = inst.n
    if n % 2 == 0:
        raise PreconditionError("the odd construction needs an odd vertex count")
    if len({v1, v2, v3, v4}) != 4:
        raise PreconditionError(f"path vertices must be distinct, got {(v1, v2, v3, v4)}")
    if S is None:
        S = min_2factor_containing_path3(inst, v1, v2, v3, v4).edges
    if is_tour(S, n):
        return FactorIsTour(S)
    if T is None:
        T = min_constrained_path_cover(inst, v1, v2, v3).edges
    if Tp is None:
        Tp = min_constrained_path_cover(inst, v2, v3, v4).edges
    cycles = cycles_of(S)
    Cstar = next(c for c in cycles if v1 in c)
    if any(x not in Cstar for x in (v2, v3, v4)):
        raise InternalInvariantError("guessed path is not on a single cycle of S")
    v0 = _neighbour_off(Cstar, v1, v2)
    v5 = _neighbour_off(Cstar, v4, v3)
    Cstarstar = next(c for c in cycles if c != Cstar)
    f, fp, q = _pick_f(Cstarstar, T, Tp, n)
    ctx = OddContext((v0, v1, v2, v3, v4, v5), S, T, Tp, Cstar, Cstarstar, f, fp, q)
    why = check_context(ctx, n)
    if why:
        raise InternalInvariantError(f"guess {(v1, v2, v3, v4)}: {why}")
    return ctx


def check_context(ctx: OddContext, n: int) -> Optional[str]:
    """Conditions the steered splits rely on; ``None`` when all hold."""
    v0, v1, v2, v3, v4, v5 = ctx.v
    for name, F in (("T", ctx.T), ("T'", ctx.Tprime)):
        rep = valid_pair_report(ctx.S, F, n)
        if not rep:
            return f"(S, {name}) is not a valid pair: {rep.detail}"
    if ctx.small_cycle and (v0 != v4 or v5 != v1):
        return "four-vertex cycle must close v1..v4 directly"
    if set(ctx.Cstar) & set(ctx.Cstarstar):
        return "second cycle meets the guessed path"
    if ctx.f in ctx.T or ctx.fprime in ctx.Tprime:
        return "first edge already in its cover"
    if ctx.q not in ctx.f or ctx.q not in ctx.fprime:
        return "first edges do not share the chosen endpoint"
    for F, e in ((ctx.T, ctx.f), (ctx.Tprime, ctx.fprime)):
        G = F.with_edge(e)
        if not valid_pair_report(ctx.S.without_edge(e), G, n):
            return f"moving {e} breaks validity"
    return None


def split_side(ctx: OddContext, primed: bool, n: int) -> FourCoversResult:
    p1, p2, p3, p4 = ctx.side_labels(primed)
    first = ctx.fprime if primed else ctx.f
    steer = Steering(first_edge=first, final_cycle=ctx.v[1], final_pair=((p1, p2), (p3, p4)))
    return four_path_covers(ctx.S, ctx.Tprime if primed else ctx.T, steer, n=n)


def build_odd_A(covers: FourCoversResult, ctx: OddContext) -> tuple[EdgeSet, EdgeSet, tuple]:
    """Connecting sets for ``S1``, ``S2``: the shared path ending at ``q`` goes first, entered at ``q``."""
    Q = shared_paths(covers.S1, covers.S2)
    first = [p for p in Q if ctx.q in (p[0], p[-1])]
    if not first:
        raise InternalInvariantError(f"q={ctx.q} is not an endpoint of a path shared by S1 and S2")
    head = first[0]
    rest = [p for p in Q if p is not head]
    ends = [(ctx.q, head[-1] if head[0] == ctx.q else head[0])] + [(p[0], p[-1]) for p in rest]
    A1, A2 = zigzag_A(ends, covers.p)
    return A1, A2, tuple(ends)


def build_odd_B(covers: FourCoversResult, ctx: OddContext, inst: Instance) -> tuple[EdgeSet, EdgeSet, int, tuple]:
    """Connecting sets for ``T1``, ``T2`` in one of three cases:
    1 when a path of ``T1 & T2`` joins ``p1`` and ``p4``, 2 when none does,
    3 when the cycle through the guessed path has four vertices."""
    p1, p2, p3, p4 = covers.p
    I = covers.T1 & covers.T2
    mate = endpoint_map(I)
    O = shared_paths(covers.T1, covers.T2)
    if not O:
        raise PreconditionError("no path shared by T1 and T2; the instance is too small")
    ends = orient_first(O, p3, p2, inst)

    def other(v: int) -> int:
        if v not in mate:
            raise InternalInvariantError(f"vertex {v} is not a path endpoint of T1 & T2")
        return mate[v]

    if p1 == p4:
        case = 3
        r = other(p1)
        b1, b2 = chain(ends, p3, r, p2, r)
    elif mate.get(p1) == p4:
        case = 1
        b1, b2 = chain(ends, p3, p4, p2, p1)
    else:
        case = 2
        q1, q4 = other(p1), other(p4)
        b1, b2 = chain(ends, p3, q4, p2, q1)
        b1.append((p4, q1))
        b2.append((p1, q4))
    return EdgeSet(b1), EdgeSet(b2), case, tuple(ends)


def check_side(ctx: OddContext, covers: FourCoversResult, primed: bool, n: int) -> Optional[str]:
    """Post-conditions of one steered split; ``None`` when all hold."""
    S, T = ctx.S, (ctx.Tprime if primed else ctx.T)
    v0, v1, v2, v3, v4, v5 = ctx.v
    centre = v3 if primed else v2
    rest = frozenset(range(n)) - {centre}
    p1, p2, p3, p4 = covers.p
    for i, (Si, Ti) in enumerate(((covers.S1, covers.T1), (covers.S2, covers.T2)), start=1):
        if Si | Ti != S | T or Si & Ti != S & T:
            return f"split {i} changes the union or intersection"
        a, b = V1(Si), V1(Ti)
        if a & b or a | b != rest:
            return f"split {i}: degree-one sets do not partition V minus {centre}"
        if ctx.q not in a:
            return f"split {i}: q={ctx.q} is not a degree-one vertex of S{i}"
    if covers.T1 - covers.T2 != EdgeSet([(p1, p2)]) or covers.T2 - covers.T1 != EdgeSet([(p3, p4)]):
        return "final edge pair not reflected in T1, T2"
    return None


def _side(ctx: OddContext, primed: bool, inst: Instance) -> SideExtension:
    n = inst.n
    covers = split_side(ctx, primed, n)
    why = check_side(ctx, covers, primed, n)
    if why:
        raise InternalInvariantError(f"{'primed' if primed else 'plain'} side: {why}")
    A1, A2, xy = build_odd_A(covers, ctx)
    B1, B2, case, zw = build_odd_B(covers, ctx, inst)
    return SideExtension(covers, A1, A2, B1, B2, case, len(xy), len(zw), xy, zw)


def extend_odd(ctx: OddContext, inst: Instance) -> OddExtension:
    return OddExtension(ctx, _side(ctx, False, inst), _side(ctx, True, inst))


@dataclass(frozen=True)
class OddAuditReport:
    length_C: int
    length_Cprime: int
    length_H: int
    length_Hprime: int
    candidate_sum: int
    checks: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "status": "pass",
            "length_C": self.length_C,
            "length_Cprime": self.length_Cprime,
            "length_H": self.length_H,
            "length_Hprime": self.length_Hprime,
            "candidate_sum": self.candidate_sum,
            "checks": list(self.checks),
        }


def _audit_side(side: SideExtension, ctx: OddContext, primed: bool, inst: Instance) -> tuple[EdgeSet, int, EdgeSet]:
    n = inst.n
    v0, v1, v2, v3, v4, v5 = ctx.v
    missing, hub = (v3, v2) if primed else (v2, v3)
    tag = "primed" if primed else "plain"
    sets = {"A1": side.A1, "A2": side.A2, "B1": side.B1, "B2": side.B2}
    names = list(sets)
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            if not sets[a].isdisjoint(sets[b]):
                raise AuditError(f"{tag}: {a} and {b} overlap", list(sets[a] & sets[b]))
    c = side.covers
    for name, F, base in (("A1", side.A1, c.S1), ("A2", side.A2, c.S2), ("B1", side.B1, c.T1), ("B2", side.B2, c.T2)):
        if F.vertices() != V1(base):
            raise AuditError(f"{tag}: V({name}) differs from the degree-one vertices of its cover")
    for i, F in enumerate(side.candidates()):
        if not is_tour(F, n):
            raise AuditError(f"{tag}: candidate {i + 1} is not a tour", F)
    C = side.A1 | side.A2 | side.B1 | side.B2
    deg = C.degrees()
    if set(deg) != set(range(n)) - {missing} or any(x != 2 for x in deg.values()):
        raise AuditError(f"{tag}: union is not a 2-factor on V minus {missing}", deg)
    cycles = cycles_of(C)
    if len(cycles) not in (1, 2):
        raise AuditError(f"{tag}: union has {len(cycles)} cycles")
    if (ctx.q, hub) not in C:
        raise AuditError(f"{tag}: union misses edge (q, {hub})", ctx.q)
    lC = total_length(C, inst)
    if len(cycles) == 2:
        p1, p2, p3, p4 = c.p
        z1, w1 = side.zw[0]
        D = close_two_cycles(C, (p3, z1), (p2, w1), cycles)
        if len(cycles_of(D)) != 1 or len(D) != n - 1:
            raise AuditError(f"{tag}: merged union is not a single cycle", D)
        if total_length(D, inst) < lC:
            raise AuditError(f"{tag}: merged union is shorter than the union")
        if (ctx.q, hub) not in D:
            raise AuditError(f"{tag}: merged union misses edge (q, {hub})")
    else:
        D = C
    return C, lC, D


def audit_odd(ext: OddExtension, inst: Instance) -> OddAuditReport:
    """Check the structural facts behind the odd guarantee; raise ``AuditError`` on any miss."""
    ctx = ext.ctx
    n = inst.n
    v0, v1, v2, v3, v4, v5 = ctx.v
    q = ctx.q
    C, lC, D = _audit_side(ext.plain, ctx, False, inst)
    Cp, lCp, Dp = _audit_side(ext.primed, ctx, True, inst)
    H = D.without_edge((q, v3)).with_edge((q, v2)).with_edge((v2, v3))
    Hp = Dp.without_edge((q, v2)).with_edge((q, v3)).with_edge((v2, v3))
    for name, F in (("H", H), ("H'", Hp)):
        if not is_tour(F, n):
            raise AuditError(f"{name} is not a tour", F)
    lH, lHp = total_length(H, inst), total_length(Hp, inst)
    bridge = 2 * inst.w(v2, v3)
    lD, lDp = total_length(D, inst), total_length(Dp, inst)
    if lH + lHp != lD + lDp + bridge:
        raise AuditError("l(H) + l(H') does not equal l(D) + l(D') + 2 l(v2, v3)")
    if lH + lHp < lC + lCp + bridge:
        raise AuditError("l(H) + l(H') is below l(C) + l(C') + 2 l(v2, v3)")
    total = sum(total_length(F, inst) for F in ext.candidates())
    lS = total_length(ctx.S, inst)
    expect = 2 * (2 * lS + total_length(ctx.T, inst) + total_length(ctx.Tprime, inst)) + lC + lCp
    if total != expect:
        raise AuditError("eight candidate lengths do not sum to the expected total", (total, expect))
    return OddAuditReport(lC, lCp, lH, lHp, total, ("disjoint", "endpoints", "tours", "union", "merge", "sum"))


@dataclass(frozen=True)
class GuessOutcome:
    guess: Guess
    candidates: tuple[EdgeSet, ...]
    ext: Optional[OddExtension] = None
    audit: Optional[OddAuditReport] = None


class _CoverCache:
    """Memo for the path covers, which depend only on the centre of the 3-vertex path and its ends."""

    def __init__(self, inst: Instance) -> None:
        self.inst = inst
        self.memo: dict = {}

    def get(self, a: int, b: int, c: int) -> EdgeSet:
        key = (b, min(a, c), max(a, c))
        hit = self.memo.get(key)
        if hit is None:
            hit = min_constrained_path_cover(self.inst, a, b, c).edges
            self.memo[key] = hit
        return hit


def inner_construction(inst: Instance, guess: Guess, audit: bool = False, cache: Optional[_CoverCache] = None) -> GuessOutcome:
    """Candidate tours for one guessed path: ``[S]`` if the factor is a tour, else eight."""
    n = inst.n
    if n % 2 == 0 or n < EXACT_BELOW:
        raise PreconditionError(f"the guessed-path construction needs odd n >= {EXACT_BELOW}, got {n}")
    v1, v2, v3, v4 = guess
    cache = cache or _CoverCache(inst)
    if len({v1, v2, v3, v4}) != 4:
        raise PreconditionError(f"path vertices must be distinct, got {guess}")
    S = min_2factor_containing_path3(inst, v1, v2, v3, v4).edges
    if is_tour(S, n):
        return GuessOutcome(tuple(guess), (S,))
    ctx = build_context(inst, v1, v2, v3, v4, S=S, T=cache.get(v1, v2, v3), Tp=cache.get(v2, v3, v4))
    ext = extend_odd(ctx, inst)
    cands = ext.candidates()
    for i, F in enumerate(cands):
        if not is_tour(F, n):
            raise InternalInvariantError(f"guess {guess}: candidate {i + 1} is not a tour")
    rep = audit_odd(ext, inst) if audit else None
    return GuessOutcome(tuple(guess), cands, ext, rep)


def all_guesses(n: int) -> Iterable[Guess]:
    """Every 3-edge path once: ordered 4-tuples of distinct vertices with ``v1 < v4``."""
    for v1 in range(n):
        for v4 in range(v1 + 1, n):
            for v2 in range(n):
                if v2 in (v1, v4):
                    continue
                for v3 in range(n):
                    if v3 not in (v1, v2, v4):
                        yield (v1, v2, v3, v4)


def _best_of(inst: Instance, guesses: Sequence[Guess], audit: bool) -> tuple[tuple, int, int, int]:
    cache = _CoverCache(inst)
    best = None
    lengths: list[int] = []
    audited = 0
    for g in guesses:
        out = inner_construction(inst, g, audit=audit, cache=cache)
        lengths.extend(total_length(F, inst) for F in out.candidates)
        audited += out.audit is not None
        tour, length = best_tour(out.candidates, inst)
        if best is None or (length, tour) < best:
            best = (length, tour)
    assert best is not None
    return best[1], best[0], lengths, audited


def _worker(args):
    inst, guesses, audit = args
    return _best_of(inst, guesses, audit)


@dataclass(frozen=True)
class OddResult(TourResult):
    guesses: int = 0
    audited: int = 0


def tour_odd(
    inst: Instance,
    mode: str = "full",
    paths: Optional[Sequence[Sequence[int]]] = None,
    workers: int = 1,
    audit: bool = False,
) -> OddResult:
    """Approximate tour with ``8 l(tour) <= 6 opt + 2 wor`` for odd ``n`` (full mode).

    ``n < 17`` is solved exactly.  ``mode="fixed"`` only tries the listed
    ``paths``; its output carries the guarantee only if one of them lies on an
    optimal tour.  ``workers > 1`` splits the guesses over processes; the
    result does not depend on the worker count.
    """
    n = inst.n
    if n % 2 == 0:
        raise PreconditionError(f"tour_odd needs an odd vertex count, got {n}")
    if mode not in ("full", "fixed"):
        raise PreconditionError(f"mode must be 'full' or 'fixed', got {mode!r}")
    if n < EXACT_BELOW:
        ex = exact_tour(inst, "min")
        return OddResult(ex.tour, ex.length, (ex.length,), exact=True)
    if mode == "fixed":
        if not paths:
            raise PreconditionError("fixed mode needs at least one path")
        guesses = []
        for p in paths:
            g = tuple(int(x) for x in p)
            if len(g) != 4 or len(set(g)) != 4 or not all(0 <= x < n for x in g):
                raise PreconditionError(f"bad path {p!r}: need four distinct vertices in 0..{n - 1}")
            guesses.append(g)
    else:
        guesses = list(all_guesses(n))
    workers = max(1, int(workers))
    if workers == 1 or len(guesses) < 2 * workers:
        tour, length, lengths, audited = _best_of(inst, guesses, audit)
    else:
        # contiguous chunks keep the concatenated candidate list in serial order
        size = -(-len(guesses) // workers)
        chunks = [guesses[i:i + size] for i in range(0, len(guesses), size)]
        with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
            parts = list(pool.map(_worker, [(inst, c, audit) for c in chunks]))
        tour, length, _, _ = min(parts, key=lambda r: (r[1], r[0]))
        lengths = [x for r in parts for x in r[2]]
        audited = sum(r[3] for r in parts)
    # per-candidate lengths are only kept for explicit guess lists; full mode has too many
    cands = tuple(lengths) if mode == "fixed" else (length,)
    return OddResult(tour, length, cands, guesses=len(guesses), audited=audited)


def reference_covers(tour: Sequence[int], guess: Guess) -> tuple[EdgeSet, EdgeSet]:
    """Two covers built from a tour through the guessed path.

    ``U`` has the path ``v1-v2-v3`` plus every other edge of the rest of the
    tour starting at ``v4``; ``U'`` has ``v2-v3-v4`` plus the complementary
    edges ending at ``v1``.  They compete with ``T`` and ``T'`` and satisfy
    ``l(U) + l(U') = l(tour) + l(v2, v3)``.
    """
    v1, v2, v3, v4 = guess
    seq = list(tour)
    n = len(seq)
    i = seq.index(v1)
    fwd = [seq[(i + j) % n] for j in range(n)]
    if fwd[1:4] != [v2, v3, v4]:
        fwd = [seq[(i - j) % n] for j in range(n)]
        if fwd[1:4] != [v2, v3, v4]:
            raise PreconditionError(f"path {guess} is not on the tour")
    tail = fwd[3:]  # v4, a5, ..., an
    U = EdgeSet([(v1, v2), (v2, v3)] + [(tail[j], tail[j + 1]) for j in range(0, len(tail) - 1, 2)])
    back = tail[1:] + [v1]  # a5, ..., an, v1
    Up = EdgeSet([(v2, v3), (v3, v4)] + [(back[j], back[j + 1]) for j in range(0, len(back) - 1, 2)])
    return U, Up
