"""Shared fixtures and independent reference checks for the test suite."""

from __future__ import annotations

import numpy as np

from difftsp.core import EdgeSet, Instance
from difftsp.generate import random_instance


def two_triangles() -> Instance:
    """K6 where {0,1,2} and {3,4,5} are unit triangles and cross edges cost 5."""
    W = np.full((6, 6), 5, dtype=np.int64)
    for a, b in [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]:
        W[a, b] = W[b, a] = 1
    np.fill_diagonal(W, 0)
    return Instance(W, name="two-triangles")


def hidden_cycle(n: int, cheap: int = 0, dear: int = 9) -> Instance:
    """Complete graph whose edges (i, i+1 mod n) cost ``cheap`` and the rest ``dear``."""
    W = np.full((n, n), dear, dtype=np.int64)
    for i in range(n):
        j = (i + 1) % n
        W[i, j] = W[j, i] = cheap
    np.fill_diagonal(W, 0)
    return Instance(W, name=f"hidden-cycle-{n}")


REGIMES = ("uniform:0:100", "euclidean:100", "onetwo")


def regime_instance(n: int, idx: int, seed: int) -> Instance:
    return random_instance(n, REGIMES[idx % 3], seed)


def naive_components(edges, n):
    adj = {v: [] for v in range(n)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen, comps = set(), []
    for s in range(n):
        if s in seen or not adj[s]:
            continue
        stack, comp = [s], set()
        while stack:
            u = stack.pop()
            if u in comp:
                continue
            comp.add(u)
            stack.extend(adj[u])
        seen |= comp
        comps.append(comp)
    return adj, comps


def naive_classify(edges, n) -> dict:
    """Degree counting and DFS without touching the library's helpers."""
    edges = {tuple(sorted(e)) for e in edges}
    adj, comps = naive_components(edges, n)
    deg = {v: len(adj[v]) for v in range(n)}
    two_matching = all(d <= 2 for d in deg.values())
    spanning = all(d >= 1 for d in deg.values())
    n_edges_in = [sum(1 for u, v in edges if u in c) for c in comps]
    acyclic = all(m == len(c) - 1 for m, c in zip(n_edges_in, comps))
    tour = two_matching and len(comps) == 1 and len(comps[0]) == n and all(d == 2 for d in deg.values())
    return {
        "is_2matching": two_matching,
        "is_spanning": spanning,
        "is_acyclic": acyclic,
        "is_path_cover": two_matching and spanning and acyclic,
        "is_tour": tour,
    }


def path_shape(F: EdgeSet) -> set:
    """Endpoint pairs of the paths of an acyclic 2-matching (as frozensets)."""
    from difftsp.core import path_decomposition

    return {frozenset((p[0], p[-1])) for p in path_decomposition(F).paths}


def pairs(*ends) -> set:
    return {frozenset(e) for e in ends}


_STRUCT_CACHE: dict = {}


def structure_array(n: int, kind: str):
    """All structures of a kind on ``n`` vertices as an int array of shape (count, edges, 2)."""
    from difftsp.oracle import enumerate_structures

    key = (n, kind)
    if key not in _STRUCT_CACHE:
        rows = [sorted(F.edges) for F in enumerate_structures(n, kind, limit=n)]
        _STRUCT_CACHE[key] = np.array(rows, dtype=np.int64)
    return _STRUCT_CACHE[key]


def weights_of(arr, inst: Instance):
    W = np.array(inst.rows, dtype=np.int64)
    return W[arr[..., 0], arr[..., 1]].sum(axis=-1)


def random_two_factor(rng, n: int) -> EdgeSet:
    """Random 2-factor: a shuffled vertex order cut into cycles of length >= 3."""
    order = [int(x) for x in rng.permutation(n)]
    sizes = []
    left = n
    while left:
        if left < 6 or rng.random() < 0.3:
            sizes.append(left)
            break
        k = int(rng.integers(3, left - 2))
        sizes.append(k)
        left -= k
    F, i = EdgeSet(), 0
    for k in sizes:
        F = F | EdgeSet.from_cycle(order[i:i + k])
        i += k
    return F


def random_pair_candidate(rng, n: int) -> tuple[EdgeSet, EdgeSet]:
    """A 2-factor ``S`` and a path cover ``T`` that may share short runs of ``S``.

    ``T`` is built from some 1- or 2-edge pieces of ``S`` plus a random
    matching of the remaining vertices (one leftover vertex hangs off a
    piece when needed).  The pair is not necessarily valid.
    """
    from difftsp.core import cycles_of

    S = random_two_factor(rng, n)
    used: set = set()
    pieces = []
    for cyc in cycles_of(S):
        k = len(cyc)
        start = int(rng.integers(k))
        for length in (1, 2):
            if rng.random() < 0.5:
                seg = [cyc[(start + j) % k] for j in range(length + 1)]
                if len(seg) < k and not used & set(seg):
                    pieces.append(seg)
                    used |= set(seg)
                start += length + 2
    rest = [int(v) for v in rng.permutation(n) if int(v) not in used]
    T = EdgeSet()
    for seg in pieces:
        T = T | EdgeSet.from_path(seg)
    if len(rest) % 2:
        v = rest.pop()
        if pieces:
            T = T.with_edge((pieces[0][-1], v))
        elif rest:
            a = rest.pop()
            b = rest.pop()
            T = T | EdgeSet.from_path([a, v, b])
    for i in range(0, len(rest) - 1, 2):
        T = T.with_edge((rest[i], rest[i + 1]))
    return S, T
