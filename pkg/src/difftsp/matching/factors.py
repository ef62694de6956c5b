"""Minimum-weight perfect matchings and degree-constrained factors.

Every routine here funnels into one blossom run.  Minimisation is turned
into maximisation with the weights ``W - w`` (``W`` the largest allowed
weight), which preserves the ordering of perfect matchings exactly because
they all have the same number of edges.

Degree-constrained factors use the edge-node gadget: vertex ``v`` becomes
``b(v)`` copies; edge ``e = (u, v)`` becomes two nodes ``e_u``, ``e_v`` joined
at cost 0, with ``e_u`` linked to every copy of ``u`` at cost ``l(e)`` and
``e_v`` linked to every copy of ``v`` at cost 0.  Perfect matchings of the
gadget correspond one-to-one (up to copy relabelling) with ``b``-factors, and
the cost is preserved.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Optional

from ..core import EdgeSet, Instance, edge, total_length
from ..errors import InfeasibleError, InternalInvariantError, PreconditionError
from .blossom import DualCertificate, max_weight_matching, verify_certificate


@dataclass(frozen=True)
class FactorSpec:
    """Degree requirements ``b`` plus edges that must or must not be used."""

    b: Mapping[int, int]
    forced: EdgeSet = field(default_factory=EdgeSet)
    forbidden: EdgeSet = field(default_factory=EdgeSet)

    @classmethod
    def uniform(cls, n: int, k: int, forced: Iterable = (), forbidden: Iterable = ()) -> "FactorSpec":
        return cls({v: k for v in range(n)}, EdgeSet(forced), EdgeSet(forbidden))

    def residual(self) -> dict[int, int]:
        res = dict(self.b)
        for u, v in self.forced:
            res[u] = res.get(u, 0) - 1
            res[v] = res.get(v, 0) - 1
        return res

    def check(self, n: int) -> dict[int, int]:
        """Structural feasibility test; returns the residual degrees."""
        for v, k in self.b.items():
            if not 0 <= v < n:
                raise PreconditionError(f"degree requirement for unknown vertex {v}")
            if k not in (0, 1, 2):
                raise PreconditionError(f"degree requirement {k} at {v} is outside {{0,1,2}}")
        clash = self.forced & self.forbidden
        if clash:
            raise InfeasibleError(f"edges both forced and forbidden: {list(clash)}")
        res = self.residual()
        for v, r in res.items():
            if r < 0:
                raise InfeasibleError(f"forced edges exceed the degree requirement at vertex {v}")
        if sum(res.values()) % 2:
            raise InfeasibleError("total residual degree is odd")
        return res


@dataclass(frozen=True)
class MatchingResult:
    edges: EdgeSet
    weight: int
    certificate: Optional[DualCertificate] = None


def _min_perfect(
    nnode: int, edges: Sequence[tuple[int, int, int]], initial: Sequence[int] = ()
) -> tuple[tuple[int, ...], DualCertificate, list[tuple[int, int, int]]]:
    if nnode % 2:
        raise InfeasibleError(f"no perfect matching on {nnode} nodes")
    if nnode == 0:
        return (), DualCertificate((), ()), []
    top = max((w for _, _, w in edges), default=0)
    flipped = [(i, j, top - w) for i, j, w in edges]
    res = max_weight_matching(nnode, flipped, maxcardinality=True, initial=initial)
    if any(m == -1 for m in res.mate):
        raise InfeasibleError("the allowed edges admit no perfect matching")
    return res.mate, res.certificate, flipped


def min_weight_perfect_matching(
    inst: Instance,
    forbidden: Iterable = (),
    vertices: Optional[Sequence[int]] = None,
    certify: bool = False,
) -> MatchingResult:
    """Minimum-weight perfect matching of ``inst`` avoiding ``forbidden``.

    ``vertices`` restricts the problem to an induced sub-instance.  With
    ``certify`` the dual solution is checked for complementary slackness and
    attached to the result (it refers to the weights ``W - l``).
    """
    forb = EdgeSet(forbidden).as_frozenset()
    verts = list(range(inst.n)) if vertices is None else sorted(set(vertices))
    if len(verts) % 2:
        raise PreconditionError(f"perfect matching needs an even vertex count, got {len(verts)}")
    rows = inst.rows
    local = []
    for a in range(len(verts)):
        u = verts[a]
        for b in range(a + 1, len(verts)):
            v = verts[b]
            if (u, v) not in forb:
                local.append((a, b, rows[u][v]))
    mate, cert, flipped = _min_perfect(len(verts), local)
    chosen = EdgeSet((verts[a], verts[mate[a]]) for a in range(len(verts)) if mate[a] > a)
    if certify:
        err = verify_certificate(len(verts), flipped, mate, cert, perfect=True)
        if err:
            raise InternalInvariantError(f"matching certificate rejected: {err}")
    return MatchingResult(chosen, total_length(chosen, inst), cert if certify else None)


def min_weight_factor(inst: Instance, spec: FactorSpec, certify: bool = False) -> MatchingResult:
    """Minimum-weight simple factor with degree ``spec.b(v)`` at every vertex,
    containing ``spec.forced`` and avoiding ``spec.forbidden``.

    Vertices missing from ``spec.b`` must have degree 0.
    """
    n = inst.n
    res = spec.check(n)
    forced = spec.forced.as_frozenset()
    forbidden = spec.forbidden.as_frozenset()
    rows = inst.rows

    copies: dict[int, list[int]] = {}
    nnode = 0
    for v in range(n):
        r = res.get(v, 0)
        if r:
            copies[v] = list(range(nnode, nnode + r))
            nnode += r
    active = sorted(copies)
    for v in active:
        avail = sum(1 for u in active if u != v and edge(u, v) not in forbidden and edge(u, v) not in forced)
        if avail < res[v]:
            raise InfeasibleError(f"vertex {v} needs {res[v]} more edges but only {avail} are allowed")

    gedges: list[tuple[int, int, int]] = []
    initial: list[int] = []
    gadget: list[tuple[tuple[int, int], int]] = []  # (edge, node e_u)
    for ai, u in enumerate(active):
        cu = copies[u]
        for v in active[ai + 1:]:
            e = (u, v)
            if e in forbidden or e in forced:
                continue
            cv = copies[v]
            wt = rows[u][v]
            if len(cu) == 1 and len(cv) == 1:
                gedges.append((cu[0], cv[0], wt))
                gadget.append((e, -1 - (len(gedges) - 1)))
                continue
            eu, ev = nnode, nnode + 1
            nnode += 2
            initial.append(len(gedges))
            gedges.append((eu, ev, 0))
            for c in cu:
                gedges.append((eu, c, wt))
            for c in cv:
                gedges.append((ev, c, 0))
            gadget.append((e, eu))

    if nnode == 0:
        chosen = spec.forced
    else:
        mate, cert, flipped = _min_perfect(nnode, gedges, initial)
        picked = []
        for e, node in gadget:
            if node < 0:
                i, j, _ = gedges[-1 - node]
                if mate[i] == j:
                    picked.append(e)
            elif mate[node] != node + 1:
                picked.append(e)
        chosen = EdgeSet(picked) | spec.forced
        if certify:
            err = verify_certificate(nnode, flipped, mate, cert, perfect=True)
            if err:
                raise InternalInvariantError(f"factor certificate rejected: {err}")

    deg = chosen.degrees()
    for v in range(n):
        if deg.get(v, 0) != spec.b.get(v, 0):
            raise InternalInvariantError(
                f"gadget projection has degree {deg.get(v, 0)} at {v}, expected {spec.b.get(v, 0)}"
            )
    if not chosen.isdisjoint(spec.forbidden):
        raise InternalInvariantError("gadget projection uses a forbidden edge")
    return MatchingResult(chosen, total_length(chosen, inst))


def min_2factor(inst: Instance) -> MatchingResult:
    """Minimum-weight 2-factor (collection of vertex-disjoint cycles covering V)."""
    return min_weight_factor(inst, FactorSpec.uniform(inst.n, 2))


def min_2factor_containing_path3(inst: Instance, v1: int, v2: int, v3: int, v4: int) -> MatchingResult:
    """Minimum-weight 2-factor containing the path ``v1-v2-v3-v4``."""
    vs = (v1, v2, v3, v4)
    if len(set(vs)) != 4:
        raise PreconditionError(f"path vertices must be distinct, got {vs}")
    if inst.n < 5:
        raise PreconditionError("a 2-factor through a 3-edge path needs n >= 5")
    for v in vs:
        if not 0 <= v < inst.n:
            raise PreconditionError(f"vertex {v} out of range")
    spec = FactorSpec.uniform(inst.n, 2, forced=[(v1, v2), (v2, v3), (v3, v4)])
    return min_weight_factor(inst, spec)


def min_constrained_path_cover(inst: Instance, u: int, v: int, w: int) -> MatchingResult:
    """Minimum-weight path cover ``T`` with ``(u,v), (v,w)`` in ``T`` and every
    vertex other than ``v`` of degree one.

    Such a ``T`` is the path ``u-v-w`` plus a perfect matching of the rest.
    """
    n = inst.n
    if n % 2 == 0:
        raise PreconditionError("constrained path cover needs an odd vertex count")
    if len({u, v, w}) != 3:
        raise PreconditionError(f"vertices must be distinct, got {(u, v, w)}")
    rest = [x for x in range(n) if x not in (u, v, w)]
    pm = min_weight_perfect_matching(inst, vertices=rest)
    edges = pm.edges | EdgeSet([(u, v), (v, w)])
    return MatchingResult(edges, total_length(edges, inst))
