"""Weighted complete graphs, edge sets, 2-matchings, path covers and tours.

Vertices are the dense integers ``0..n-1``.  Edge sets are immutable and
store each undirected edge once as ``(u, v)`` with ``u < v``.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import MalformedInputError, PreconditionError

INT64_MAX = 2**63 - 1

Edge = tuple[int, int]


def edge(u: int, v: int) -> Edge:
    """Canonical form of the undirected edge ``{u, v}``."""
    if u == v:
        raise MalformedInputError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


class EdgeSet:
    """Immutable set of undirected edges in canonical ``(min, max)`` form.

    Iteration is in lexicographic order.  Set algebra (``|``, ``&``, ``-``)
    returns new ``EdgeSet`` objects.
    """

    __slots__ = ("_edges", "_sorted", "_hash")

    def __init__(self, edges: Iterable[Sequence[int]] = ()) -> None:
        if isinstance(edges, EdgeSet):
            self._edges: frozenset[Edge] = edges._edges
        else:
            self._edges = frozenset(edge(int(u), int(v)) for u, v in edges)
        self._sorted: Optional[tuple[Edge, ...]] = None
        self._hash: Optional[int] = None

    @classmethod
    def _raw(cls, edges: frozenset[Edge]) -> "EdgeSet":
        obj = cls.__new__(cls)
        obj._edges = edges
        obj._sorted = None
        obj._hash = None
        return obj

    @classmethod
    def from_path(cls, vertices: Sequence[int]) -> "EdgeSet":
        return cls(zip(vertices, vertices[1:]))

    @classmethod
    def from_cycle(cls, vertices: Sequence[int]) -> "EdgeSet":
        vs = list(vertices)
        return cls(zip(vs, vs[1:] + vs[:1]))

    @property
    def edges(self) -> tuple[Edge, ...]:
        if self._sorted is None:
            self._sorted = tuple(sorted(self._edges))
        return self._sorted

    def as_frozenset(self) -> frozenset[Edge]:
        return self._edges

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)

    def __len__(self) -> int:
        return len(self._edges)

    def __bool__(self) -> bool:
        return bool(self._edges)

    def __contains__(self, item: object) -> bool:
        try:
            u, v = item  # type: ignore[misc]
        except (TypeError, ValueError):
            return False
        if u == v:
            return False
        return ((u, v) if u < v else (v, u)) in self._edges

    def __eq__(self, other: object) -> bool:
        if isinstance(other, EdgeSet):
            return self._edges == other._edges
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._edges)
        return self._hash

    def __or__(self, other: "EdgeSet") -> "EdgeSet":
        return EdgeSet._raw(self._edges | _coerce(other)._edges)

    def __and__(self, other: "EdgeSet") -> "EdgeSet":
        return EdgeSet._raw(self._edges & _coerce(other)._edges)

    def __sub__(self, other: "EdgeSet") -> "EdgeSet":
        return EdgeSet._raw(self._edges - _coerce(other)._edges)

    def isdisjoint(self, other: "EdgeSet") -> bool:
        return self._edges.isdisjoint(_coerce(other)._edges)

    def issubset(self, other: "EdgeSet") -> bool:
        return self._edges <= _coerce(other)._edges

    def with_edge(self, e: Sequence[int]) -> "EdgeSet":
        return EdgeSet._raw(self._edges | {edge(*e)})

    def without_edge(self, e: Sequence[int]) -> "EdgeSet":
        return EdgeSet._raw(self._edges - {edge(*e)})

    def vertices(self) -> frozenset[int]:
        """``V(F)``: vertices incident to at least one edge."""
        return frozenset(v for e in self._edges for v in e)

    def degrees(self) -> dict[int, int]:
        deg: dict[int, int] = {}
        for u, v in self._edges:
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        return deg

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {}
        for u, v in self.edges:
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        return adj

    def incident(self, v: int) -> "EdgeSet":
        """``delta_F(v)``."""
        return EdgeSet._raw(frozenset(e for e in self._edges if v in e))

    def __repr__(self) -> str:
        return f"EdgeSet({list(self.edges)!r})"


def _coerce(other: object) -> EdgeSet:
    if isinstance(other, EdgeSet):
        return other
    return EdgeSet(other)  # type: ignore[arg-type]


@dataclass(frozen=True, eq=False)
class Instance:
    """Complete graph on ``n`` vertices with symmetric nonnegative integer lengths.

    ``weights`` is stored as a read-only ``int64`` array; ``scale`` records the
    power of ten the source data was multiplied by to make it integral.
    """

    weights: np.ndarray
    name: str = ""
    scale: int = 0
    _rows: tuple = field(init=False, repr=False)

    def __post_init__(self) -> None:
        raw = self.weights
        if isinstance(raw, np.ndarray) and raw.dtype.kind == "f":
            raise MalformedInputError("weights must be integers, got a float array")
        try:
            rows = [[int(x) for x in row] for row in raw]
        except (TypeError, ValueError) as exc:
            raise MalformedInputError(f"weights are not an integer matrix: {exc}") from None
        n = len(rows)
        if n < 3:
            raise MalformedInputError(f"an instance needs at least 3 vertices, got {n}")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise MalformedInputError(f"row {i} has {len(row)} entries, expected {n}")
        for i in range(n):
            rows[i][i] = 0
            for j in range(i):
                a, b = rows[i][j], rows[j][i]
                if a != b:
                    raise MalformedInputError(f"asymmetric weights at ({j},{i}): {b} != {a}")
                if a < 0:
                    raise MalformedInputError(f"negative weight {a} at ({j},{i})")
                if a > INT64_MAX // n:
                    raise MalformedInputError(f"weight {a} at ({j},{i}) risks int64 overflow")
        arr = np.array(rows, dtype=np.int64)
        arr.setflags(write=False)
        object.__setattr__(self, "weights", arr)
        object.__setattr__(self, "_rows", tuple(tuple(r) for r in rows))

    @property
    def n(self) -> int:
        return len(self._rows)

    def w(self, u: int, v: int) -> int:
        """Length of edge ``(u, v)`` as a Python int."""
        return self._rows[u][v]

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return self._rows

    def all_edges(self) -> Iterator[Edge]:
        n = self.n
        for u in range(n):
            for v in range(u + 1, n):
                yield (u, v)

    def check_edges(self, F: EdgeSet) -> None:
        n = self.n
        for u, v in F:
            if u < 0 or v >= n:
                raise MalformedInputError(f"edge {(u, v)} references a vertex outside 0..{n - 1}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Instance):
            return NotImplemented
        return self._rows == other._rows and self.name == other.name and self.scale == other.scale

    def __hash__(self) -> int:
        return hash((self._rows, self.name, self.scale))


@dataclass(frozen=True)
class DegreeProfile:
    deg: dict[int, int]
    V1: frozenset[int]
    V2: frozenset[int]


def degree_profile(F: EdgeSet) -> DegreeProfile:
    deg = F.degrees()
    return DegreeProfile(
        deg=deg,
        V1=frozenset(v for v, d in deg.items() if d == 1),
        V2=frozenset(v for v, d in deg.items() if d == 2),
    )


def V1(F: EdgeSet) -> frozenset[int]:
    return frozenset(v for v, d in F.degrees().items() if d == 1)


def V2(F: EdgeSet) -> frozenset[int]:
    return frozenset(v for v, d in F.degrees().items() if d == 2)


@dataclass(frozen=True)
class Classification:
    n: int
    deg: dict[int, int]
    is_2matching: bool
    is_spanning: bool
    is_acyclic: bool
    is_path_cover: bool
    is_tour: bool
    n_cycles: int

    def is_k_factor(self, k: int) -> bool:
        if k <= 0:
            return not self.deg
        return len(self.deg) == self.n and all(d == k for d in self.deg.values())

    def is_k_matching(self, k: int) -> bool:
        return all(d <= k for d in self.deg.values())


def _count_cycles(F: EdgeSet) -> int:
    """Number of independent cycles (cyclomatic number) via union-find."""
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        root = x
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(x, x) != root:
            parent[x], x = root, parent[x]
        return root

    extra = 0
    for u, v in F:
        ru, rv = find(u), find(v)
        if ru == rv:
            extra += 1
        else:
            parent[ru] = rv
    return extra


def classify(F: EdgeSet, inst: Instance) -> Classification:
    """Report which of the standard edge-set predicates hold for ``F``."""
    inst.check_edges(F)
    deg = F.degrees()
    is_2m = all(d <= 2 for d in deg.values())
    spanning = len(deg) == inst.n
    n_cycles = _count_cycles(F)
    acyclic = n_cycles == 0
    is_tour = is_2m and spanning and len(F) == inst.n and n_cycles == 1 and _connected(F)
    return Classification(
        n=inst.n,
        deg=deg,
        is_2matching=is_2m,
        is_spanning=spanning,
        is_acyclic=acyclic,
        is_path_cover=is_2m and spanning and acyclic,
        is_tour=is_tour,
        n_cycles=n_cycles,
    )


def _connected(F: EdgeSet) -> bool:
    adj = F.adjacency()
    if not adj:
        return True
    start = next(iter(adj))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == len(adj)


def is_tour(F: EdgeSet, n: int) -> bool:
    """Cheap tour test that avoids building a full classification."""
    if len(F) != n:
        return False
    deg = F.degrees()
    if len(deg) != n or any(d != 2 for d in deg.values()):
        return False
    return _connected(F)


@dataclass(frozen=True)
class PathDecomposition:
    """Vertex-disjoint paths of an acyclic 2-matching (isolated vertices omitted)."""

    paths: tuple[tuple[int, ...], ...]

    @property
    def endpoints(self) -> tuple[tuple[int, int], ...]:
        return tuple((p[0], p[-1]) for p in self.paths)

    def __len__(self) -> int:
        return len(self.paths)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.paths)

    def edge_sets(self) -> list[EdgeSet]:
        return [EdgeSet.from_path(p) for p in self.paths]

    def path_of(self, v: int) -> Optional[tuple[int, ...]]:
        for p in self.paths:
            if v in p:
                return p
        return None

    def path_with_endpoints(self, a: int, b: int) -> Optional[tuple[int, ...]]:
        for p in self.paths:
            if (p[0], p[-1]) in ((a, b), (b, a)):
                return p
        return None


def _walk(adj: dict[int, list[int]], start: int, first: int) -> list[int]:
    seq = [start, first]
    prev, cur = start, first
    while True:
        nxt = [x for x in adj[cur] if x != prev]
        if not nxt or nxt[0] == start:
            return seq
        prev, cur = cur, nxt[0]
        seq.append(cur)


def path_decomposition(F: EdgeSet) -> PathDecomposition:
    """Split an acyclic 2-matching into its paths.

    Paths are listed by smallest contained vertex and written from the
    smaller endpoint to the larger one.
    """
    adj = F.adjacency()
    for v, nb in adj.items():
        if len(nb) > 2:
            raise PreconditionError(f"vertex {v} has degree {len(nb)} > 2")
    seen: set[int] = set()
    paths = []
    for v in sorted(adj):
        if v in seen or len(adj[v]) != 1:
            continue
        p = _walk(adj, v, adj[v][0])
        seen.update(p)
        if p[-1] < p[0]:
            p.reverse()
        paths.append(tuple(p))
    if len(seen) != len(adj):
        cyc = min(set(adj) - seen)
        raise PreconditionError(f"edge set contains a cycle through vertex {cyc}")
    paths.sort(key=min)
    return PathDecomposition(tuple(paths))


def cycles_of(F: EdgeSet) -> list[tuple[int, ...]]:
    """Cycles of a 2-matching, each starting at its smallest vertex and
    continuing towards the smaller of that vertex's two neighbours."""
    adj = F.adjacency()
    seen: set[int] = set()
    out = []
    for v in sorted(adj):
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            for x in adj[u]:
                if x not in comp:
                    comp.add(x)
                    stack.append(x)
        seen |= comp
        if all(len(adj[x]) == 2 for x in comp):
            out.append(tuple(_walk(adj, v, min(adj[v]))))
    return out


def total_length(F: Iterable[Sequence[int]], inst: Instance) -> int:
    """``l(F)``: exact integer sum of edge lengths."""
    rows = inst.rows
    total = 0
    for u, v in F:
        total += rows[u][v]
    if total > INT64_MAX:
        raise OverflowError(f"edge-set length {total} exceeds the int64 range")
    return total


def canonical_tour(F: EdgeSet) -> list[int]:
    """Vertex sequence of a tour starting at 0, then its smaller neighbour."""
    adj = F.adjacency()
    n = len(adj)
    if n < 3 or len(F) != n or any(len(nb) != 2 for nb in adj.values()) or 0 not in adj:
        raise PreconditionError("edge set is not a tour")
    seq = _walk(adj, 0, min(adj[0]))
    if len(seq) != n:
        raise PreconditionError("edge set is a union of several cycles, not a tour")
    return seq


def tour_edges(order: Sequence[int]) -> EdgeSet:
    return EdgeSet.from_cycle(order)


@dataclass(frozen=True)
class ValidityReport:
    """Outcome of the valid-pair predicate; truthy iff the pair is valid."""

    valid: bool
    clause: Optional[str] = None
    detail: str = ""
    witness: object = None

    def __bool__(self) -> bool:
        return self.valid


def is_valid_pair(S: EdgeSet, T: EdgeSet, inst: Instance) -> ValidityReport:
    """Check that ``(S, T)`` is a valid pair of spanning 2-matchings.

    (i) both spanning 2-matchings with ``T`` acyclic; (ii) ``S`` and ``T``
    agree on the incident edges of every vertex of degree two in both;
    (iii) no cycle of ``S`` has the same vertex set as a path of ``T``.
    """
    inst.check_edges(S)
    inst.check_edges(T)
    return valid_pair_report(S, T, inst.n)


def valid_pair_report(S: EdgeSet, T: EdgeSet, n: int) -> ValidityReport:
    """``is_valid_pair`` on the vertex set ``0..n-1`` without an instance."""
    ds, dt = S.degrees(), T.degrees()
    for name, d in (("S", ds), ("T", dt)):
        bad = [v for v, k in d.items() if k > 2]
        if bad:
            return ValidityReport(False, "i", f"{name} is not a 2-matching", bad[0])
        if len(d) != n:
            missing = min(set(range(n)) - set(d))
            return ValidityReport(False, "i", f"{name} is not spanning", missing)
    if _count_cycles(T):
        return ValidityReport(False, "i", "T contains a cycle", None)
    for v in range(n):
        if ds[v] == 2 and dt[v] == 2:
            if S.incident(v) != T.incident(v):
                return ValidityReport(False, "ii", "S and T differ at a shared degree-2 vertex", v)
    path_sets = {frozenset(p) for p in path_decomposition(T).paths}
    for c in cycles_of(S):
        if frozenset(c) in path_sets:
            return ValidityReport(False, "iii", "an S-cycle spans the same vertices as a T-path", c)
    return ValidityReport(True)
