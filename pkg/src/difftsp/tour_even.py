"""3/4-differential approximation for instances with an even number of vertices.

A minimum 2-factor ``S`` and a minimum perfect matching ``T`` are split into
four path covers; each cover is closed into a tour with a connecting edge set
(``A1``, ``A2`` for the ``S`` side, ``B1``, ``B2`` for the ``T`` side) and the
shortest of the four tours is returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .core import (
    EdgeSet,
    Instance,
    V1,
    canonical_tour,
    cycles_of,
    is_tour,
    path_decomposition,
    total_length,
)
from .errors import AuditError, InternalInvariantError, PreconditionError
from .matching.factors import min_2factor, min_weight_perfect_matching
from .pathcover import FourCoversResult, four_path_covers

Path = tuple[int, ...]


# helpers shared with the odd construction


def shared_paths(F1: EdgeSet, F2: EdgeSet) -> list[Path]:
    """Paths present (as edge sets) in both decompositions, ordered by smallest
    vertex and written smaller endpoint first."""
    other = {EdgeSet.from_path(p) for p in path_decomposition(F2).paths}
    return [p for p in path_decomposition(F1).paths if EdgeSet.from_path(p) in other]


def endpoint_map(F: EdgeSet) -> dict[int, int]:
    """Each path endpoint of ``F`` mapped to the opposite endpoint."""
    out = {}
    for p in path_decomposition(F).paths:
        out[p[0]] = p[-1]
        out[p[-1]] = p[0]
    return out


def orient_first(paths: Sequence[Path], a: int, b: int, inst: Instance) -> list[tuple[int, int]]:
    """Endpoint pairs ``(x_i, y_i)`` with the first path oriented so that
    ``l(a, x1) + l(b, y1) <= l(a, y1) + l(b, x1)`` (ties: smaller ``x1``)."""
    ends = [(p[0], p[-1]) for p in paths]
    if ends:
        x, y = ends[0]
        keep = inst.w(a, x) + inst.w(b, y)
        flip = inst.w(a, y) + inst.w(b, x)
        if flip < keep or (flip == keep and y < x):
            ends[0] = (y, x)
    return ends


def chain(ends: Sequence[tuple[int, int]], s1: int, t1: int, s2: int, t2: int) -> tuple[list, list]:
    """Two edge lists threading the same paths in opposite directions.

    The first runs ``s1 -> z1 .. w1 -> z2 .. w_d -> t1``, the second
    ``s2 -> w1 .. z1 -> w2 .. z_d -> t2``; with no paths they are the single
    edges ``(s1, t1)`` and ``(s2, t2)``.
    """
    if not ends:
        return [(s1, t1)], [(s2, t2)]
    z = [e[0] for e in ends]
    w = [e[1] for e in ends]
    d = len(ends)
    one = [(s1, z[0])] + [(w[i], z[i + 1]) for i in range(d - 1)] + [(w[-1], t1)]
    two = [(s2, w[0])] + [(z[i], w[i + 1]) for i in range(d - 1)] + [(z[-1], t2)]
    return one, two


def zigzag_A(ends: Sequence[tuple[int, int]], p: Sequence[int]) -> tuple[EdgeSet, EdgeSet]:
    """``A1 = (p2,x1), (y_i,x_{i+1}), (y_k,p1)`` and ``A2 = (p3,y1), (x_i,y_{i+1}), (x_k,p4)``."""
    p1, p2, p3, p4 = p
    if not ends:
        raise InternalInvariantError("no path is shared by S1 and S2")
    x = [e[0] for e in ends]
    y = [e[1] for e in ends]
    k = len(ends)
    A1 = [(p2, x[0])] + [(y[i], x[i + 1]) for i in range(k - 1)] + [(y[-1], p1)]
    A2 = [(p3, y[0])] + [(x[i], y[i + 1]) for i in range(k - 1)] + [(x[-1], p4)]
    return EdgeSet(A1), EdgeSet(A2)


@dataclass(frozen=True)
class EvenExtension:
    """Connecting edge sets for the four path covers, with the labels used to build them."""

    covers: FourCoversResult
    A1: EdgeSet
    A2: EdgeSet
    B1: EdgeSet
    B2: EdgeSet
    caseB: int
    k: int
    d: int
    xy: tuple[tuple[int, int], ...]
    zw: tuple[tuple[int, int], ...]
    q: dict = field(default_factory=dict)

    @property
    def p(self) -> tuple[int, int, int, int]:
        return self.covers.p

    def candidates(self) -> tuple[EdgeSet, EdgeSet, EdgeSet, EdgeSet]:
        c = self.covers
        return (c.S1 | self.A1, c.S2 | self.A2, c.T1 | self.B1, c.T2 | self.B2)


def build_A(covers: FourCoversResult, inst: Instance) -> tuple[EdgeSet, EdgeSet, tuple]:
    """Edge sets closing ``S1`` and ``S2`` into tours; also returns the ``(x_i, y_i)`` labels."""
    p1, p2, p3, p4 = covers.p
    if p1 in (p3, p4) or p4 in (p1, p2):
        raise PreconditionError(f"edge labels {covers.p} do not come from one cycle")
    Q = shared_paths(covers.S1, covers.S2)
    ends = orient_first(Q, p2, p3, inst)
    A1, A2 = zigzag_A(ends, covers.p)
    return A1, A2, tuple(ends)


def build_B(covers: FourCoversResult, inst: Instance) -> tuple[EdgeSet, EdgeSet, int, tuple, dict]:
    """Edge sets closing ``T1`` and ``T2`` into tours.

    The case number depends on whether ``p2 == p3`` and on which endpoint
    pairs are joined by paths of ``T1 & T2``.
    Returns ``(B1, B2, case, zw labels, q labels)``.
    """
    p1, p2, p3, p4 = covers.p
    I = covers.T1 & covers.T2
    mate = endpoint_map(I)
    ends = [(p[0], p[-1]) for p in shared_paths(covers.T1, covers.T2)]

    def other(v: int) -> int:
        if v not in mate:
            raise InternalInvariantError(f"vertex {v} is not a path endpoint of T1 & T2")
        return mate[v]

    joined_14 = mate.get(p1) == p4
    labels: dict = {}
    if p2 == p3:
        q2 = other(p2)
        labels["q2"] = q2
        if joined_14:
            case = 1
            b1, b2 = chain(ends, q2, p4, q2, p1)
        else:
            case = 2
            q1, q4 = other(p1), other(p4)
            labels.update(q1=q1, q4=q4)
            b1, b2 = chain(ends, q2, q4, q2, q1)
            b1.append((p4, q1))
            b2.append((p1, q4))
    else:
        if mate.get(p2) != p3:
            raise InternalInvariantError(f"T1 & T2 has no path joining p2={p2} and p3={p3}")
        if joined_14:
            case = 3
            b1, b2 = chain(ends, p3, p4, p2, p1)
        else:
            case = 4
            q1, q4 = other(p1), other(p4)
            labels.update(q1=q1, q4=q4)
            b1, b2 = chain(ends, p3, q4, p2, q1)
            b1.append((p4, q1))
            b2.append((p1, q4))
    return EdgeSet(b1), EdgeSet(b2), case, tuple(ends), labels


def extend_even(covers: FourCoversResult, inst: Instance) -> EvenExtension:
    A1, A2, xy = build_A(covers, inst)
    B1, B2, case, zw, labels = build_B(covers, inst)
    return EvenExtension(covers, A1, A2, B1, B2, case, len(xy), len(zw), xy, zw, labels)


@dataclass(frozen=True)
class AuditReport:
    """Lengths of the analysis objects; only produced when every check passed."""

    length_C: int
    length_H: int
    n_cycles: int
    candidate_sum: int
    checks: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "status": "pass",
            "length_C": self.length_C,
            "length_H": self.length_H,
            "cycles_in_C": self.n_cycles,
            "candidate_sum": self.candidate_sum,
            "checks": list(self.checks),
        }


def _fail(msg: str, witness=None) -> None:
    raise AuditError(msg, witness)


def close_two_cycles(
    C: EdgeSet, a: tuple[int, int], b: tuple[int, int], cycles: list
) -> EdgeSet:
    """Merge the two cycles of ``C`` by replacing edges ``a=(a0,a1)`` and
    ``b=(b0,b1)`` with ``(a0,b1)`` and ``(b0,a1)``."""
    where = {}
    for i, c in enumerate(cycles):
        for v in c:
            where[v] = i
    if a not in C or b not in C:
        _fail("swap edges are not both in the union", (a, b))
    if where[a[0]] == where[b[0]]:
        _fail("swap edges lie in the same cycle", (a, b))
    return (C.without_edge(a).without_edge(b)).with_edge((a[0], b[1])).with_edge((b[0], a[1]))


def audit_union(ext: EvenExtension, S: EdgeSet, T: EdgeSet, inst: Instance) -> AuditReport:
    """Check the structural facts behind the even guarantee; raise ``AuditError`` on any miss."""
    n = inst.n
    c = ext.covers
    p1, p2, p3, p4 = ext.p
    done = []
    sets = {"A1": ext.A1, "A2": ext.A2, "B1": ext.B1, "B2": ext.B2}
    names = list(sets)
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            if not sets[a].isdisjoint(sets[b]):
                _fail(f"{a} and {b} overlap", list(sets[a] & sets[b]))
    done.append("disjoint")
    for name, F, base in (("A1", ext.A1, c.S1), ("A2", ext.A2, c.S2), ("B1", ext.B1, c.T1), ("B2", ext.B2, c.T2)):
        if F.vertices() != V1(base):
            _fail(f"V({name}) differs from the degree-one vertices of its cover", sorted(F.vertices() ^ V1(base)))
    done.append("endpoints")
    cands = ext.candidates()
    for i, F in enumerate(cands):
        if not is_tour(F, n):
            _fail(f"candidate {i + 1} is not a tour", F)
    done.append("tours")
    C = ext.A1 | ext.A2 | ext.B1 | ext.B2
    deg = C.degrees()
    if len(deg) != n or any(v != 2 for v in deg.values()):
        _fail("union of connecting sets is not a 2-factor", deg)
    cycles = cycles_of(C)
    if len(cycles) not in (1, 2):
        _fail(f"union of connecting sets has {len(cycles)} cycles", cycles)
    lC = total_length(C, inst)
    if len(cycles) == 2:
        x1, y1 = ext.xy[0]
        H = close_two_cycles(C, (p2, x1), (p3, y1), cycles)
        if not is_tour(H, n):
            _fail("merged union is not a tour", H)
        lH = total_length(H, inst)
        if lH < lC:
            _fail("merged union is shorter than the union", (lH, lC))
    else:
        lH = lC
    done.append("union")
    total = sum(total_length(F, inst) for F in cands)
    if total != 2 * (total_length(S, inst) + total_length(T, inst)) + lC:
        _fail("candidate lengths do not sum to 2(l(S)+l(T)) + l(C)", total)
    done.append("sum")
    return AuditReport(lC, lH, len(cycles), total, tuple(done))


@dataclass(frozen=True)
class TourResult:
    """Tour returned by a solver with the lengths of every candidate considered."""

    tour: tuple[int, ...]
    length: int
    candidates: tuple[int, ...]
    factor_is_tour: bool = False
    exact: bool = False
    extension: Optional[object] = None
    audit: Optional[object] = None

    @property
    def edges(self) -> EdgeSet:
        return EdgeSet.from_cycle(self.tour)


def best_tour(cands: Sequence[EdgeSet], inst: Instance) -> tuple[tuple[int, ...], int]:
    """Shortest tour; ties go to the lexicographically smallest canonical sequence."""
    best = None
    for F in cands:
        key = (total_length(F, inst), tuple(canonical_tour(F)))
        if best is None or key < best:
            best = key
    assert best is not None
    return best[1], best[0]


def tour_even(inst: Instance, audit: bool = False) -> TourResult:
    """Approximate tour with ``4 l(tour) <= 3 opt + wor`` for even ``n``."""
    n = inst.n
    if n % 2 or n < 4:
        raise PreconditionError(f"tour_even needs an even vertex count >= 4, got {n}")
    S = min_2factor(inst).edges
    if is_tour(S, n):
        tour = tuple(canonical_tour(S))
        lS = total_length(S, inst)
        return TourResult(tour, lS, (lS,), factor_is_tour=True)
    T = min_weight_perfect_matching(inst).edges
    covers = four_path_covers(S, T, n=n)
    ext = extend_even(covers, inst)
    cands = ext.candidates()
    for i, F in enumerate(cands):
        if not is_tour(F, n):
            raise InternalInvariantError(f"candidate {i + 1} is not a tour")
    report = audit_union(ext, S, T, inst) if audit else None
    tour, length = best_tour(cands, inst)
    return TourResult(
        tour,
        length,
        tuple(total_length(F, inst) for F in cands),
        extension=ext,
        audit=report,
    )
