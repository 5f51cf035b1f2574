"""The interference relation and the interference digraph.

Request ``r`` interferes on ``r2`` when the directed tree path from the
source of ``r`` to the target of ``r2`` starts with the emission arc of
``r`` and ends with the reception arc of ``r2``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .instance import Instance, Kind, Request, RequestGeometry, classify_all
from .tree import BidirectedTree, RootedView, directed_path

DENSE_LIMIT = 4096

C, D, U = Kind.CONVERGING, Kind.DIVERGING, Kind.UNIMODAL


def interferes_on(tree: BidirectedTree, r: Request, r2: Request) -> bool:
    """Definitional check, linear in the tree size."""
    own = directed_path(tree, r.s, r.t)
    other = directed_path(tree, r2.s, r2.t)
    p = directed_path(tree, r.s, r2.t)
    if len(p) < 2:
        return False
    return (p[0], p[1]) == (own[0], own[1]) and (p[-2], p[-1]) == (other[-2], other[-1])


def _beyond(view: RootedView, a: int, b: int, x: int) -> bool:
    """``x`` lies on the ``b`` side once the edge ``{a, b}`` is removed."""
    if view.parent[b] == a:
        return view.is_ancestor(b, x)
    return not view.is_ancestor(a, x)


def _arc_on(view: RootedView, g: RequestGeometry, g2: RequestGeometry) -> bool:
    return _beyond(view, g.s, g.s_plus, g2.t) and _beyond(view, g2.t, g2.t_minus, g.s)


def _kinds_interfere(view: RootedView, g: RequestGeometry, g2: RequestGeometry) -> bool:
    """Symmetric interference by case analysis on the two request kinds."""
    anc = view.is_ancestor
    rel = view.related
    k, k2 = g.kind, g2.kind
    if k is C and k2 is C:
        return rel(g.t_minus, g2.t_minus)
    if k is D and k2 is D:
        return rel(g.s_plus, g2.s_plus)
    if k is C and k2 is D:
        return not rel(g.s, g2.t)
    if k is D and k2 is C:
        return not rel(g2.s, g.t)
    if k is U and k2 is U:
        return not (g.m == g2.m and rel(g.s, g2.t) and rel(g2.s, g.t))
    if k is not U:
        g, g2 = g2, g
    # g unimodal, g2 converging or diverging
    if g2.kind is C:
        return not (anc(g.m, g2.t) and rel(g.t, g2.s))
    return not (anc(g.m, g2.s) and rel(g.s, g2.t))


def interferes_fast(
    view: RootedView, g: RequestGeometry, g2: RequestGeometry
) -> tuple[bool, bool]:
    """``(g on g2, g2 on g)`` in constant time.

    Whether the pair interferes at all is decided by the kind-by-kind case
    analysis; arc orientation is then read off the emission/reception sides.
    """
    if not _kinds_interfere(view, g, g2):
        return (False, False)
    return (_arc_on(view, g, g2), _arc_on(view, g2, g))


@dataclass
class InterferenceDigraph:
    m: int
    out_neighbours: tuple[tuple[int, ...], ...]
    _adj: np.ndarray | None = field(default=None, repr=False)
    _nbr: tuple[frozenset[int], ...] = field(default=(), repr=False)

    def __post_init__(self):
        nbr = [set() for _ in range(self.m)]
        for i, outs in enumerate(self.out_neighbours):
            for j in outs:
                nbr[i].add(j)
                nbr[j].add(i)
        self._nbr = tuple(frozenset(x) for x in nbr)
        if self.m <= DENSE_LIMIT:
            adj = np.zeros((self.m, self.m), dtype=bool)
            for i, outs in enumerate(self.out_neighbours):
                adj[i, list(outs)] = True
            self._adj = adj

    @classmethod
    def from_arcs(cls, m: int, arcs: Iterable[tuple[int, int]]) -> "InterferenceDigraph":
        outs = [set() for _ in range(m)]
        for i, j in arcs:
            outs[i].add(j)
        return cls(m, tuple(tuple(sorted(o)) for o in outs))

    def has_arc(self, i: int, j: int) -> bool:
        if self._adj is not None:
            return bool(self._adj[i, j])
        return j in self.out_neighbours[i]

    def adjacent(self, i: int, j: int) -> bool:
        return j in self._nbr[i]

    def neighbours(self, i: int) -> frozenset[int]:
        return self._nbr[i]

    def arcs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, outs in enumerate(self.out_neighbours) for j in outs]

    def edges(self) -> list[tuple[int, int]]:
        return sorted({(min(i, j), max(i, j)) for i, j in self.arcs()})

    def induced_adjacency(self, indices: list[int]) -> list[set[int]]:
        """Undirected adjacency among ``indices`` (positions into that list)."""
        pos = {v: k for k, v in enumerate(indices)}
        return [{pos[u] for u in self._nbr[v] if u in pos} for v in indices]


def build_digraph(inst: Instance) -> InterferenceDigraph:
    """One search per request from its second vertex, away from its source.

    The search records, for every reached vertex, the vertex it was entered
    from; ``r`` interferes on ``r2`` exactly when the target of ``r2`` is
    reached and was entered through the reception arc of ``r2``.
    """
    tree = inst.tree
    reqs = inst.requests
    m = len(reqs)
    if m == 0:
        return InterferenceDigraph(0, ())
    view = RootedView(tree, 0)
    geo = classify_all(view, reqs)
    by_target: dict[int, list[tuple[int, int]]] = {}
    for j, g in enumerate(geo):
        by_target.setdefault(g.t, []).append((j, g.t_minus))

    adjacency = tree.adjacency
    outs: list[tuple[int, ...]] = []
    came_from = [-1] * tree.n
    for i, g in enumerate(geo):
        touched = [g.s_plus]
        came_from[g.s_plus] = g.s
        queue = deque([g.s_plus])
        while queue:
            u = queue.popleft()
            for v in adjacency[u]:
                if v != came_from[u] and came_from[v] == -1 and v != g.s:
                    came_from[v] = u
                    touched.append(v)
                    queue.append(v)
        found = []
        for v in touched:
            for j, tm in by_target.get(v, ()):
                if j != i and came_from[v] == tm:
                    found.append(j)
        for v in touched:
            came_from[v] = -1
        outs.append(tuple(sorted(found)))
    return InterferenceDigraph(m, tuple(outs))


def build_digraph_fast(inst: Instance, root: int = 0) -> InterferenceDigraph:
    """All-pairs construction through :func:`interferes_fast`."""
    view = RootedView(inst.tree, root)
    geo = classify_all(view, inst.requests)
    m = len(geo)
    outs = [[] for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            a, b = interferes_fast(view, geo[i], geo[j])
            if a:
                outs[i].append(j)
            if b:
                outs[j].append(i)
    return InterferenceDigraph(m, tuple(tuple(sorted(o)) for o in outs))
