"""Maximum-weight matching in general graphs by Edmonds' blossom method.

Primal-dual O(n^3) algorithm in the formulation of Galil (1986), with
explicit blossom shrinking and expansion.  Weights must be integers; vertex
duals are kept doubled so that every dual value stays integral.

Edges are referred to by index ``k`` into the input list.  An *endpoint*
``p`` is ``2*k`` or ``2*k + 1`` and names one end of edge ``k``;
``p ^ 1`` is the opposite end.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence


@dataclass(frozen=True)
class DualCertificate:
    """Optimality certificate for a maximum-weight matching.

    ``vertex_dual[v]`` is twice the LP dual of vertex ``v``; each entry of
    ``blossoms`` is ``(leaves, z)`` with ``z`` the dual of that odd set in the
    same doubled units used for the edge slack
    ``vertex_dual[i] + vertex_dual[j] - 2*w + 2*sum(z of blossoms containing i and j)``.
    """

    vertex_dual: tuple[int, ...]
    blossoms: tuple[tuple[frozenset[int], int], ...]


@dataclass(frozen=True)
class BlossomResult:
    mate: tuple[int, ...]
    certificate: DualCertificate


def max_weight_matching(
    nvertex: int,
    edges: Sequence[tuple[int, int, int]],
    maxcardinality: bool = False,
    initial: Sequence[int] = (),
) -> BlossomResult:
    """Compute a maximum-weight matching.

    ``edges`` holds ``(i, j, w)`` triples with integer ``w``; there may be at
    most one edge per vertex pair.  With ``maxcardinality`` the result is a
    maximum-weight matching among those of maximum cardinality.

    ``initial`` optionally lists indices of vertex-disjoint edges to start from.
    Each must carry the maximum weight of the graph (it is then tight for the
    starting duals), which is the case for the zero-cost links of the factor
    gadget after the min-to-max weight transform.

    Returns ``mate`` (``mate[v]`` is the partner of ``v`` or -1) together with
    the final dual solution.
    """
    nedge = len(edges)
    if nedge == 0:
        return BlossomResult(tuple([-1] * nvertex), DualCertificate(tuple([0] * nvertex), ()))

    maxweight = max(0, max(wt for (_, _, wt) in edges))
    endpoint = [edges[p >> 1][p & 1] for p in range(2 * nedge)]
    neighbend: list[list[int]] = [[] for _ in range(nvertex)]
    for k, (i, j, _) in enumerate(edges):
        if i == j:
            raise ValueError(f"self-loop on vertex {i}")
        neighbend[i].append(2 * k + 1)
        neighbend[j].append(2 * k)

    # mate[v] is the remote endpoint of v's matched edge, or -1
    mate = [-1] * nvertex
    # label: 0 free, 1 S-vertex/blossom, 2 T-vertex/blossom (5 marks scanBlossom)
    label = [0] * (2 * nvertex)
    labelend = [-1] * (2 * nvertex)
    inblossom = list(range(nvertex))
    blossomparent = [-1] * (2 * nvertex)
    blossomchilds: list[Optional[list[int]]] = [None] * (2 * nvertex)
    blossombase = list(range(nvertex)) + [-1] * nvertex
    blossomendps: list[Optional[list[int]]] = [None] * (2 * nvertex)
    bestedge = [-1] * (2 * nvertex)
    blossombestedges: list[Optional[list[int]]] = [None] * (2 * nvertex)
    unusedblossoms = list(range(nvertex, 2 * nvertex))
    dualvar = [maxweight] * nvertex + [0] * nvertex
    allowedge = [False] * nedge
    queue: list[int] = []

    for k in initial:
        i, j, wt = edges[k]
        if wt != maxweight:
            raise ValueError(f"initial edge {k} is not tight for the starting duals")
        if mate[i] != -1 or mate[j] != -1:
            raise ValueError(f"initial edges share a vertex at edge {k}")
        mate[i] = 2 * k + 1
        mate[j] = 2 * k

    def slack(k: int) -> int:
        i, j, wt = edges[k]
        return dualvar[i] + dualvar[j] - 2 * wt

    def leaves(b: int):
        if b < nvertex:
            yield b
        else:
            for t in blossomchilds[b]:
                if t < nvertex:
                    yield t
                else:
                    yield from leaves(t)

    def assign_label(w: int, t: int, p: int) -> None:
        b = inblossom[w]
        label[w] = label[b] = t
        labelend[w] = labelend[b] = p
        bestedge[w] = bestedge[b] = -1
        if t == 1:
            queue.extend(leaves(b))
        else:
            base = blossombase[b]
            assign_label(endpoint[mate[base]], 1, mate[base] ^ 1)

    def scan_blossom(v: int, w: int) -> int:
        # Trace back from v and w towards the roots; return the base of the
        # new blossom, or -1 when an augmenting path was found.
        path = []
        base = -1
        while v != -1 or w != -1:
            b = inblossom[v]
            if label[b] & 4:
                base = blossombase[b]
                break
            path.append(b)
            label[b] = 5
            if labelend[b] == -1:
                v = -1
            else:
                v = endpoint[labelend[b]]
                b = inblossom[v]
                v = endpoint[labelend[b]]
            if w != -1:
                v, w = w, v
        for b in path:
            label[b] = 1
        return base

    def add_blossom(base: int, k: int) -> None:
        v, w, _ = edges[k]
        bb = inblossom[base]
        bv = inblossom[v]
        bw = inblossom[w]
        b = unusedblossoms.pop()
        blossombase[b] = base
        blossomparent[b] = -1
        blossomparent[bb] = b
        path: list[int] = []
        endps: list[int] = []
        blossomchilds[b] = path
        blossomendps[b] = endps
        while bv != bb:
            blossomparent[bv] = b
            path.append(bv)
            endps.append(labelend[bv])
            v = endpoint[labelend[bv]]
            bv = inblossom[v]
        path.append(bb)
        path.reverse()
        endps.reverse()
        endps.append(2 * k)
        while bw != bb:
            blossomparent[bw] = b
            path.append(bw)
            endps.append(labelend[bw] ^ 1)
            w = endpoint[labelend[bw]]
            bw = inblossom[w]
        label[b] = 1
        labelend[b] = labelend[bb]
        dualvar[b] = 0
        for v in leaves(b):
            if label[inblossom[v]] == 2:
                # former T-vertices become S-vertices inside the new blossom
                queue.append(v)
            inblossom[v] = b
        bestedgeto = [-1] * (2 * nvertex)
        for bv in path:
            if blossombestedges[bv] is None:
                nblists = [[p >> 1 for p in neighbend[v]] for v in leaves(bv)]
            else:
                nblists = [blossombestedges[bv]]
            for nblist in nblists:
                for k2 in nblist:
                    i, j, _ = edges[k2]
                    if inblossom[j] == b:
                        i, j = j, i
                    bj = inblossom[j]
                    if bj != b and label[bj] == 1 and (
                        bestedgeto[bj] == -1 or slack(k2) < slack(bestedgeto[bj])
                    ):
                        bestedgeto[bj] = k2
            blossombestedges[bv] = None
            bestedge[bv] = -1
        best = [k2 for k2 in bestedgeto if k2 != -1]
        blossombestedges[b] = best
        bestedge[b] = -1
        for k2 in best:
            if bestedge[b] == -1 or slack(k2) < slack(bestedge[b]):
                bestedge[b] = k2

    def expand_blossom(b: int, endstage: bool) -> None:
        for s in blossomchilds[b]:
            blossomparent[s] = -1
            if s < nvertex:
                inblossom[s] = s
            elif endstage and dualvar[s] == 0:
                expand_blossom(s, endstage)
            else:
                for v in leaves(s):
                    inblossom[v] = s
        if not endstage and label[b] == 2:
            # Relabel the sub-blossoms on the even-length path from the
            # entry child to the base.
            entrychild = inblossom[endpoint[labelend[b] ^ 1]]
            childs = blossomchilds[b]
            endps = blossomendps[b]
            j = childs.index(entrychild)
            if j & 1:
                j -= len(childs)
                jstep = 1
                endptrick = 0
            else:
                jstep = -1
                endptrick = 1
            p = labelend[b]
            while j != 0:
                label[endpoint[p ^ 1]] = 0
                label[endpoint[endps[j - endptrick] ^ endptrick ^ 1]] = 0
                assign_label(endpoint[p ^ 1], 2, p)
                allowedge[endps[j - endptrick] >> 1] = True
                j += jstep
                p = endps[j - endptrick] ^ endptrick
                allowedge[p >> 1] = True
                j += jstep
            bv = childs[j]
            label[endpoint[p ^ 1]] = label[bv] = 2
            labelend[endpoint[p ^ 1]] = labelend[bv] = p
            bestedge[bv] = -1
            j += jstep
            while childs[j] != entrychild:
                bv = childs[j]
                if label[bv] == 1:
                    j += jstep
                    continue
                v = -1
                for v in leaves(bv):
                    if label[v] != 0:
                        break
                if label[v] != 0:
                    label[v] = 0
                    label[endpoint[mate[blossombase[bv]]]] = 0
                    assign_label(v, 2, labelend[v])
                j += jstep
        label[b] = labelend[b] = -1
        blossomchilds[b] = blossomendps[b] = None
        blossombase[b] = -1
        blossombestedges[b] = None
        bestedge[b] = -1
        unusedblossoms.append(b)

    def augment_blossom(b: int, v: int) -> None:
        # Swap matched/unmatched edges on the path from v to the base of b.
        t = v
        while blossomparent[t] != b:
            t = blossomparent[t]
        if t >= nvertex:
            augment_blossom(t, v)
        childs = blossomchilds[b]
        endps = blossomendps[b]
        i = j = childs.index(t)
        if i & 1:
            j -= len(childs)
            jstep = 1
            endptrick = 0
        else:
            jstep = -1
            endptrick = 1
        while j != 0:
            j += jstep
            t = childs[j]
            p = endps[j - endptrick] ^ endptrick
            if t >= nvertex:
                augment_blossom(t, endpoint[p])
            j += jstep
            t = childs[j]
            if t >= nvertex:
                augment_blossom(t, endpoint[p ^ 1])
            mate[endpoint[p]] = p ^ 1
            mate[endpoint[p ^ 1]] = p
        blossomchilds[b] = childs[i:] + childs[:i]
        blossomendps[b] = endps[i:] + endps[:i]
        blossombase[b] = blossombase[blossomchilds[b][0]]

    def augment_matching(k: int) -> None:
        v, w, _ = edges[k]
        for s, p in ((v, 2 * k + 1), (w, 2 * k)):
            while True:
                bs = inblossom[s]
                if bs >= nvertex:
                    augment_blossom(bs, s)
                mate[s] = p
                if labelend[bs] == -1:
                    break
                t = endpoint[labelend[bs]]
                bt = inblossom[t]
                s = endpoint[labelend[bt]]
                j = endpoint[labelend[bt] ^ 1]
                if bt >= nvertex:
                    augment_blossom(bt, j)
                mate[j] = labelend[bt]
                p = labelend[bt] ^ 1

    while True:
        # One stage: grow alternating trees until an augmentation happens.
        for i in range(2 * nvertex):
            label[i] = 0
            bestedge[i] = -1
        for i in range(nvertex, 2 * nvertex):
            blossombestedges[i] = None
        for i in range(nedge):
            allowedge[i] = False
        queue.clear()
        for v in range(nvertex):
            if mate[v] == -1 and label[inblossom[v]] == 0:
                assign_label(v, 1, -1)
        if not queue:
            break

        augmented = False
        while True:
            while queue and not augmented:
                v = queue.pop()
                for p in neighbend[v]:
                    k = p >> 1
                    w = endpoint[p]
                    bv_ = inblossom[v]
                    bw_ = inblossom[w]
                    if bv_ == bw_:
                        continue
                    kslack = 0
                    if not allowedge[k]:
                        kslack = slack(k)
                        if kslack <= 0:
                            allowedge[k] = True
                    if allowedge[k]:
                        if label[bw_] == 0:
                            assign_label(w, 2, p ^ 1)
                        elif label[bw_] == 1:
                            base = scan_blossom(v, w)
                            if base >= 0:
                                add_blossom(base, k)
                            else:
                                augment_matching(k)
                                augmented = True
                                break
                        elif label[w] == 0:
                            label[w] = 2
                            labelend[w] = p ^ 1
                    elif label[bw_] == 1:
                        if bestedge[bv_] == -1 or kslack < slack(bestedge[bv_]):
                            bestedge[bv_] = k
                    elif label[w] == 0:
                        if bestedge[w] == -1 or kslack < slack(bestedge[w]):
                            bestedge[w] = k
            if augmented:
                break

            # No augmenting path with tight edges: adjust the duals.
            deltatype = -1
            delta = 0
            deltaedge = -1
            deltablossom = -1
            if not maxcardinality:
                deltatype = 1
                delta = min(dualvar[:nvertex])
            for v in range(nvertex):
                if label[inblossom[v]] == 0 and bestedge[v] != -1:
                    d = slack(bestedge[v])
                    if deltatype == -1 or d < delta:
                        delta = d
                        deltatype = 2
                        deltaedge = bestedge[v]
            for b in range(2 * nvertex):
                if blossomparent[b] == -1 and label[b] == 1 and bestedge[b] != -1:
                    kslack = slack(bestedge[b])
                    d = kslack // 2
                    if deltatype == -1 or d < delta:
                        delta = d
                        deltatype = 3
                        deltaedge = bestedge[b]
            for b in range(nvertex, 2 * nvertex):
                if (
                    blossombase[b] >= 0
                    and blossomparent[b] == -1
                    and label[b] == 2
                    and (deltatype == -1 or dualvar[b] < delta)
                ):
                    delta = dualvar[b]
                    deltatype = 4
                    deltablossom = b
            if deltatype == -1:
                # maxcardinality and no further progress possible
                deltatype = 1
                delta = max(0, min(dualvar[:nvertex]))

            for v in range(nvertex):
                lb = label[inblossom[v]]
                if lb == 1:
                    dualvar[v] -= delta
                elif lb == 2:
                    dualvar[v] += delta
            for b in range(nvertex, 2 * nvertex):
                if blossombase[b] >= 0 and blossomparent[b] == -1:
                    if label[b] == 1:
                        dualvar[b] += delta
                    elif label[b] == 2:
                        dualvar[b] -= delta

            if deltatype == 1:
                break
            elif deltatype == 2:
                allowedge[deltaedge] = True
                i, j, _ = edges[deltaedge]
                if label[inblossom[i]] == 0:
                    i, j = j, i
                queue.append(i)
            elif deltatype == 3:
                allowedge[deltaedge] = True
                i, j, _ = edges[deltaedge]
                queue.append(i)
            else:
                expand_blossom(deltablossom, False)

        if not augmented:
            break
        for b in range(nvertex, 2 * nvertex):
            if (
                blossomparent[b] == -1
                and blossombase[b] >= 0
                and label[b] == 1
                and dualvar[b] == 0
            ):
                expand_blossom(b, True)

    mate_v = tuple(endpoint[p] if p >= 0 else -1 for p in mate)
    blossoms = tuple(
        (frozenset(leaves(b)), dualvar[b])
        for b in range(nvertex, 2 * nvertex)
        if blossombase[b] >= 0 and dualvar[b] != 0
    )
    return BlossomResult(mate_v, DualCertificate(tuple(dualvar[:nvertex]), blossoms))


def verify_certificate(
    nvertex: int,
    edges: Sequence[tuple[int, int, int]],
    mate: Sequence[int],
    cert: DualCertificate,
    perfect: bool = True,
) -> Optional[str]:
    """Check complementary slackness; return ``None`` if the certificate proves
    optimality, else a description of the first violated condition.

    With ``perfect`` the vertex duals are unrestricted in sign (perfect-matching
    LP); otherwise exposed vertices must have zero dual.
    """
    yv = cert.vertex_dual
    member: list[list[int]] = [[] for _ in range(nvertex)]
    for idx, (leafs, z) in enumerate(cert.blossoms):
        if z < 0:
            return f"negative blossom dual {z}"
        if len(leafs) % 2 == 0:
            return "blossom with an even number of vertices"
        for v in leafs:
            member[v].append(idx)
    matched_in = [0] * len(cert.blossoms)
    for k, (i, j, w) in enumerate(edges):
        common = set(member[i]).intersection(member[j])
        s = yv[i] + yv[j] - 2 * w + 2 * sum(cert.blossoms[b][1] for b in common)
        if s < 0:
            return f"negative slack {s} on edge {k}"
        if mate[i] == j:
            if s != 0:
                return f"matched edge {k} has slack {s}"
            for b in common:
                matched_in[b] += 1
    for idx, (leafs, z) in enumerate(cert.blossoms):
        if z > 0 and 2 * matched_in[idx] + 1 != len(leafs):
            return f"blossom {idx} with positive dual is not full"
    if not perfect:
        for v in range(nvertex):
            if mate[v] == -1 and yv[v] != 0:
                return f"exposed vertex {v} has nonzero dual"
    return None
