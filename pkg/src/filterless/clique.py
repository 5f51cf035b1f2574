"""Maximum clique of the interference graph.

Root the tree at vertex 0.  For every pair of leaves ``(y_i, y_j)`` take
the leaf-to-leaf path between them (the root-to-leaf path when ``i == j``)
and split the requests into those sharing an arc with it and the
unimodal ones that avoid it.  Each part induces a cobipartite graph, whose
clique number is a bipartite matching away, and every request of the first
part interferes with every request of the second.  The best pair wins.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .errors import EmptyInstance, PartitionNotCliques
from .instance import Instance
from .interference import InterferenceDigraph, build_digraph
from .tree import RootedView, path_arcs


@dataclass(frozen=True)
class CobipartitePartition:
    part_a: tuple[int, ...]
    part_b: tuple[int, ...]


@dataclass(frozen=True)
class Clique:
    members: tuple[int, ...]
    leaves: tuple[int, int] | None = None
    pivot: int | None = None

    def __len__(self) -> int:
        return len(self.members)


def bipartite_max_matching(
    left: Sequence[int], right: Sequence[int], edges: Sequence[tuple[int, int]]
) -> list[tuple[int, int]]:
    """Maximum-cardinality matching, returned as ``(left, right)`` pairs."""
    if not left or not right or not edges:
        return []
    lpos = {v: k for k, v in enumerate(left)}
    rpos = {v: k for k, v in enumerate(right)}
    rows = [lpos[u] for u, _ in edges]
    cols = [rpos[v] for _, v in edges]
    graph = csr_matrix(
        (np.ones(len(edges), dtype=np.int8), (rows, cols)), shape=(len(left), len(right))
    )
    graph.sum_duplicates()
    match = maximum_bipartite_matching(graph, perm_type="column")
    return [(left[k], right[c]) for k, c in enumerate(match.tolist()) if c >= 0]


def _konig_independent(left, right, edges, matching) -> list[int]:
    """Largest independent set of a bipartite graph from a maximum matching."""
    adj: dict[int, list[int]] = {u: [] for u in left}
    for u, v in edges:
        adj[u].append(v)
    mate_l = {u: v for u, v in matching}
    mate_r = {v: u for u, v in matching}
    seen_l = {u for u in left if u not in mate_l}
    seen_r: set[int] = set()
    queue = deque(seen_l)
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in seen_r:
                seen_r.add(v)
                w = mate_r.get(v)
                if w is not None and w not in seen_l:
                    seen_l.add(w)
                    queue.append(w)
    return sorted([u for u in left if u in seen_l] + [v for v in right if v not in seen_r])


def cobipartite_clique(
    digraph: InterferenceDigraph, partition: CobipartitePartition, validate: bool = False
) -> Clique:
    a, b = list(partition.part_a), list(partition.part_b)
    if validate:
        for part in (a, b):
            for x in range(len(part)):
                for y in range(x + 1, len(part)):
                    if not digraph.adjacent(part[x], part[y]):
                        raise PartitionNotCliques(
                            f"requests {part[x]} and {part[y]} share a part but do not interfere"
                        )
    missing = [(u, v) for u in a for v in b if not digraph.adjacent(u, v)]
    matching = bipartite_max_matching(a, b, missing)
    return Clique(tuple(_konig_independent(a, b, missing, matching)))


def max_clique(inst: Instance, validate: bool = False) -> Clique:
    """Exact maximum clique; best run on a reduced instance (fewer leaves)."""
    if not inst.requests:
        raise EmptyInstance("no requests")
    dg = build_digraph(inst)
    view = RootedView(inst.tree, 0)
    paths = [view.path(s, t) for s, t in inst.requests]
    arcsets = [set(path_arcs(p)) for p in paths]
    tips = [v for v in range(inst.tree.n) if v != view.root and not view.children[v]]
    if not tips:
        tips = [view.root]

    best: Clique | None = None
    for a in range(len(tips)):
        for b in range(a, len(tips)):
            yi, yj = tips[a], tips[b]
            if a == b:
                bough = view.path(view.root, yi)
                pivot = yi
            else:
                bough = view.path(yi, yj)
                pivot = view.lca(yi, yj)
            clique = _bough_clique(view, dg, inst, paths, arcsets, bough, pivot, validate)
            if best is None or len(clique) > len(best):
                best = Clique(clique.members, (yi, yj), pivot)
    return best


def _median(view: RootedView, a: int, b: int, c: int) -> int:
    cands = (view.lca(a, b), view.lca(a, c), view.lca(b, c))
    return max(cands, key=lambda v: view.depth[v])


def _bough_clique(view, dg, inst, paths, arcsets, bough, pivot, validate) -> Clique:
    fwd = set(path_arcs(bough))
    bwd = {(v, u) for u, v in fwd}
    side_a, side_b = [], []
    by_middle: dict[int, tuple[list[int], list[int]]] = {}
    for i, (s, t) in enumerate(inst.requests):
        arcs = arcsets[i]
        if arcs & fwd:
            side_a.append(i)
        elif arcs & bwd:
            side_b.append(i)
        else:
            mid = _median(view, s, t, pivot)
            if mid == s or mid == t:
                continue
            p = paths[i]
            k = p.index(mid)
            a_side, b_side = by_middle.setdefault(mid, ([], []))
            (a_side if p[k - 1] < p[k + 1] else b_side).append(i)
    members = list(
        cobipartite_clique(dg, CobipartitePartition(tuple(side_a), tuple(side_b)), validate).members
    )
    for mid in sorted(by_middle):
        pa, pb = by_middle[mid]
        members += cobipartite_clique(dg, CobipartitePartition(tuple(pa), tuple(pb)), validate).members
    return Clique(tuple(sorted(members)))
