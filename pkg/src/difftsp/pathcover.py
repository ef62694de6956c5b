"""Turning a valid pair (S, T) into four path covers.

Each round takes one cycle of ``S`` and moves one of its edges into ``T``;
the round on the last remaining cycle produces two alternative edges and
therefore two pairs ``(S_1, T_1)`` and ``(S_2, T_2)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .core import (
    EdgeSet,
    V1,
    _count_cycles,
    cycles_of,
    edge,
    path_decomposition,
    valid_pair_report,
)
from .errors import InternalInvariantError, PreconditionError, SteeringError

OrientedEdge = tuple[int, int]


@dataclass(frozen=True)
class Movable:
    """Two movable edges of a cycle.

    ``e1 = (p1, p2)`` and ``e2 = (p3, p4)`` are oriented so that ``p2`` and
    ``p3`` are the endpoints of ``path`` (a path of T) through which both
    edges attach; ``p2 == p3`` when the path meets the cycle in one vertex.
    """

    e1: OrientedEdge
    e2: OrientedEdge
    path: tuple[int, ...]


def _cycle_seq(C) -> tuple[int, ...]:
    if isinstance(C, EdgeSet):
        cyc = cycles_of(C)
        if len(cyc) != 1 or len(cyc[0]) != len(C):
            raise PreconditionError("edge set is not a single cycle")
        return cyc[0]
    return tuple(C)


def movable_edges(S: EdgeSet, T: EdgeSet, C) -> Movable:
    """Pick two edges of the cycle ``C`` of ``S`` that can each be moved to ``T``.

    Prefers a path of ``T`` with exactly one endpoint on ``C`` and returns the
    two cycle edges at that endpoint.  Otherwise takes a path with both
    endpoints ``s``, ``t`` on ``C``, walks the cycle through ``s`` and returns
    the edge entering ``s`` and the edge leaving ``t``.  The walking direction
    is chosen so that the edge entering ``s`` is not on the path and the two
    edges share no vertex, which keeps ``p1`` away from ``p3`` and ``p4``.
    If neither direction works, any vertex-disjoint pair of cycle edges at
    ``s`` and ``t`` that passes ``check_movable`` is used.  Among qualifying paths the one with the smallest on-cycle endpoint wins.
    """
    seq = _cycle_seq(C)
    k = len(seq)
    pos = {v: i for i, v in enumerate(seq)}
    one_end = []
    both_ends = []
    for path in path_decomposition(T).paths:
        a, b = path[0], path[-1]
        for s, t in ((a, b), (b, a)):
            if s in pos:
                (both_ends if t in pos else one_end).append((s, t, path))
    if one_end:
        s, _, path = min(one_end, key=lambda c: c[0])
        i = pos[s]
        lo, hi = sorted((seq[i - 1], seq[(i + 1) % k]))
        return Movable((lo, s), (s, hi), path)
    if not both_ends:
        raise InternalInvariantError(f"no path of T ends on cycle {seq}; the pair is not valid")
    for s, t, path in sorted(both_ends, key=lambda c: (c[0], c[1])):
        nb = path[1] if path[0] == s else path[-2]
        i = pos[s]
        for step in (1, -1):
            # order[0] precedes s = order[1] when walking the cycle in direction `step`
            order = [seq[(i + step * j) % k] for j in range(-1, k - 1)]
            if order[0] in (nb, t):
                continue
            j = order.index(t)
            after = order[(j + 1) % k]
            if after == order[0]:
                continue
            return Movable((order[0], s), (t, after), path)
    # Walking fails when t sits opposite s on a four-cycle: both directions
    # give edges sharing a vertex.  Fall back to any disjoint pair at s and t.
    n = len((S | T).vertices())
    for s, t, path in sorted(both_ends, key=lambda c: (c[0], c[1])):
        inside = set(path)
        at_s = sorted(x for x in (seq[pos[s] - 1], seq[(pos[s] + 1) % k]) if x not in inside)
        at_t = sorted(y for y in (seq[pos[t] - 1], seq[(pos[t] + 1) % k]) if y not in inside)
        for x in at_s:
            for y in at_t:
                if len({x, s, t, y}) == 4 and check_movable(S, T, (x, s), (t, y), n) is None:
                    return Movable((x, s), (t, y), path)
    raise InternalInvariantError(f"no admissible edge pair on cycle {seq}")


def check_movable(S: EdgeSet, T: EdgeSet, e1: Sequence[int], e2: Sequence[int], n: int) -> Optional[str]:
    """Return ``None`` if ``e1`` and ``e2`` satisfy the three movable-edge
    conclusions for ``(S, T)``, else the reason they do not."""
    v1_union = V1(S) | V1(T)
    v1_inter = V1(S) & V1(T)
    for name, e in (("e1", e1), ("e2", e2)):
        if e not in S or e in T:
            return f"{name}={tuple(e)} must be in S and not in T"
        Si, Ti = S.without_edge(e), T.with_edge(e)
        rep = valid_pair_report(Si, Ti, n)
        if not rep:
            return f"moving {name}={tuple(e)} breaks validity: clause ({rep.clause}) {rep.detail}"
        a, b = V1(Si), V1(Ti)
        if a | b != v1_union or a & b != v1_inter:
            return f"moving {name}={tuple(e)} changes the degree-one vertex sets"
    for path in path_decomposition(T).paths:
        if _extends(path, e1) and _extends(path, e2):
            return None
    return "no path of T extends by both edges"


@dataclass(frozen=True)
class Steering:
    """Prescribed choices for the path-cover procedure.

    ``first_edge`` is moved in round one; ``final_cycle`` names (by any of its
    vertices) the cycle handled last, and ``final_pair`` the two edges used
    there.  An empty steering reproduces the deterministic default.
    """

    first_edge: Optional[OrientedEdge] = None
    final_cycle: Optional[int] = None
    final_pair: Optional[tuple[OrientedEdge, OrientedEdge]] = None

    def __post_init__(self) -> None:
        if self.final_pair is not None and self.final_cycle is None:
            raise PreconditionError("final_pair requires final_cycle")


@dataclass(frozen=True)
class Round:
    cycle: tuple[int, ...]
    moved: tuple[OrientedEdge, ...]


@dataclass(frozen=True)
class FourCoversResult:
    S1: EdgeSet
    T1: EdgeSet
    S2: EdgeSet
    T2: EdgeSet
    e1: OrientedEdge
    e2: OrientedEdge
    path: tuple[int, ...]
    rounds: tuple[Round, ...] = field(default=())

    @property
    def p(self) -> tuple[int, int, int, int]:
        """``(p1, p2, p3, p4)`` with ``e1 = (p1, p2)`` and ``e2 = (p3, p4)``."""
        return (self.e1[0], self.e1[1], self.e2[0], self.e2[1])


def four_path_covers(
    S: EdgeSet, T: EdgeSet, steer: Steering = Steering(), n: Optional[int] = None
) -> FourCoversResult:
    """Run the round-by-round procedure on a valid pair ``(S, T)``.

    Cycles are processed in ascending order of their smallest vertex, except
    that the cycle of ``steer.first_edge`` goes first and ``steer.final_cycle``
    goes last.  Validity of the running pair is asserted after every round.
    """
    if n is None:
        n = len((S | T).vertices())
    rep = valid_pair_report(S, T, n)
    if not rep:
        raise PreconditionError(f"(S, T) is not a valid pair: clause ({rep.clause}) {rep.detail}")
    cycles = cycles_of(S)
    if not cycles:
        raise PreconditionError("S has no cycle")

    first = None
    if steer.first_edge is not None:
        fe = steer.first_edge
        if fe in T:
            raise SteeringError(1, f"first edge {tuple(fe)} already lies in T")
        owner = [c for c in cycles if edge(*fe) in EdgeSet.from_cycle(c)]
        if not owner:
            raise SteeringError(1, f"first edge {tuple(fe)} is not on a cycle of S")
        first = owner[0]
    last = None
    if steer.final_cycle is not None:
        owner = [c for c in cycles if steer.final_cycle in c]
        if not owner:
            raise SteeringError(len(cycles), f"no cycle of S contains vertex {steer.final_cycle}")
        last = owner[0]
    if first is not None and first == last and len(cycles) > 1:
        raise SteeringError(1, "first edge lies on the cycle reserved for the final round")
    if first is not None and len(cycles) == 1:
        raise SteeringError(1, "S has a single cycle, so there is no first round to steer")

    order = [c for c in cycles if c != first and c != last]
    if first is not None:
        order.insert(0, first)
    if last is not None:
        order.append(last)

    rounds = []
    curS, curT = S, T
    for r, C in enumerate(order[:-1], start=1):
        if r == 1 and steer.first_edge is not None:
            e = tuple(steer.first_edge)
            nS, nT = curS.without_edge(e), curT.with_edge(e)
            rep = valid_pair_report(nS, nT, n)
            if not rep:
                raise SteeringError(r, f"moving {e} breaks validity: clause ({rep.clause}) {rep.detail}")
        else:
            e = movable_edges(curS, curT, C).e1
            nS, nT = curS.without_edge(e), curT.with_edge(e)
            rep = valid_pair_report(nS, nT, n)
            if not rep:
                raise InternalInvariantError(f"round {r}: pair invalid after moving {e}: {rep.detail}")
        curS, curT = nS, nT
        rounds.append(Round(C, (e,)))

    C = order[-1]
    r = len(order)
    if steer.final_pair is not None:
        e1, e2 = (tuple(x) for x in steer.final_pair)
        why = check_movable(curS, curT, e1, e2, n)
        if why:
            raise SteeringError(r, why)
        shared = _shared_path(curT, e1, e2)
    else:
        mv = movable_edges(curS, curT, C)
        e1, e2, shared = mv.e1, mv.e2, mv.path
        why = check_movable(curS, curT, e1, e2, n)
        if why:
            raise InternalInvariantError(f"round {r}: default edge choice fails: {why}")
    rounds.append(Round(C, (e1, e2)))
    return FourCoversResult(
        S1=curS.without_edge(e1),
        T1=curT.with_edge(e1),
        S2=curS.without_edge(e2),
        T2=curT.with_edge(e2),
        e1=e1,
        e2=e2,
        path=shared,
        rounds=tuple(rounds),
    )


def _shared_path(T: EdgeSet, e1: Sequence[int], e2: Sequence[int]) -> tuple[int, ...]:
    for path in path_decomposition(T).paths:
        if _extends(path, e1) and _extends(path, e2):
            return path
    raise InternalInvariantError("no shared path for the final edge pair")


def check_four_covers(S: EdgeSet, T: EdgeSet, res: FourCoversResult, n: int) -> list[str]:
    """Collect every violated invariant of a path-cover result (empty = all hold)."""
    bad = []
    union, inter = S | T, S & T
    for i, (Si, Ti) in enumerate(((res.S1, res.T1), (res.S2, res.T2)), start=1):
        for name, F in ((f"S{i}", Si), (f"T{i}", Ti)):
            deg = F.degrees()
            if len(deg) != n or any(d > 2 for d in deg.values()) or _count_cycles(F):
                bad.append(f"{name} is not a path cover")
        if Si | Ti != union or Si & Ti != inter:
            bad.append(f"S{i}/T{i} do not preserve the union and intersection of S and T")
        a, b = V1(Si), V1(Ti)
        if a | b != V1(S) | V1(T) or a & b != V1(S) & V1(T):
            bad.append(f"S{i}/T{i} change the degree-one vertex sets")
        if not V1(S):
            if a & b or a | b != V1(T):
                bad.append(f"V1(S{i}), V1(T{i}) do not partition V1(T)")
    if res.T1 - res.T2 != EdgeSet([res.e1]) or res.T2 - res.T1 != EdgeSet([res.e2]):
        bad.append("T1 and T2 do not differ by exactly e1 and e2")
    found = any(
        _extends(path, res.e1) and _extends(path, res.e2) for path in _safe_paths(res.T1 & res.T2)
    )
    if not found:
        bad.append("no path of T1 & T2 extends to a path by e1 and by e2")
    if len(res.rounds) != len(cycles_of(S)):
        bad.append("number of rounds differs from the number of cycles of S")
    return bad


def _extends(path: Sequence[int], e: Sequence[int]) -> bool:
    """``path + e`` is again a path: ``e`` hangs off one end and leaves the path."""
    inside = set(path)
    return sum(x in inside for x in e) == 1 and any(x in (path[0], path[-1]) for x in e)


def _safe_paths(F: EdgeSet) -> list[tuple[int, ...]]:
    try:
        return list(path_decomposition(F).paths)
    except PreconditionError:
        return []
