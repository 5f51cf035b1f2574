"""Requests, their geometry relative to a root, and instance rewrites.

Requests are kept as ``(s, t)`` pairs; the path itself is implied since it
is unique in a tree.  Identical requests may appear several times.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import EmptyRequestSet, InvalidRequest
from .tree import NO_PARENT, BidirectedTree, RootedView, build_tree


class Request(NamedTuple):
    s: int
    t: int

    def converse(self) -> "Request":
        return Request(self.t, self.s)


class Kind(enum.Enum):
    CONVERGING = "converging"
    DIVERGING = "diverging"
    UNIMODAL = "unimodal"


@dataclass(frozen=True, slots=True)
class RequestGeometry:
    """Shape of a request once the tree is rooted.

    ``m`` is the request vertex closest to the root; ``m_minus`` and
    ``m_plus`` are its predecessor and successor along the request (-1 when
    absent).
    """

    kind: Kind
    s: int
    t: int
    s_plus: int
    t_minus: int
    m: int
    m_minus: int
    m_plus: int

    @property
    def emission(self) -> tuple[int, int]:
        return (self.s, self.s_plus)

    @property
    def reception(self) -> tuple[int, int]:
        return (self.t_minus, self.t)


@dataclass(frozen=True)
class Instance:
    tree: BidirectedTree
    requests: tuple[Request, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "requests", tuple(Request(int(s), int(t)) for s, t in self.requests)
        )
        for i, (s, t) in enumerate(self.requests):
            for w in (s, t):
                if not 0 <= w < self.tree.n:
                    raise InvalidRequest(f"request {i}: vertex {w} not in [0, {self.tree.n})")
            if s == t:
                raise InvalidRequest(f"request {i}: source equals target ({s})")

    def __len__(self) -> int:
        return len(self.requests)

    def subset(self, indices: Sequence[int]) -> "Instance":
        """Same tree, only the listed requests (re-indexed 0..len-1)."""
        return Instance(self.tree, tuple(self.requests[i] for i in indices))

    def converse(self) -> "Instance":
        return Instance(self.tree, tuple(r.converse() for r in self.requests))


@dataclass(frozen=True)
class VertexMapping:
    """Where each old vertex went, plus a note of which edges were rewritten."""

    forward: tuple[int, ...]
    contracted: tuple[tuple[int, int], ...] = ()
    subdivided: tuple[tuple[int, int, int], ...] = field(default=())


def classify(view: RootedView, r: Request) -> RequestGeometry:
    s, t = r
    if s == t:
        raise InvalidRequest(f"request ({s}, {t}) has length 0")
    m = view.lca(s, t)
    if m == t:
        t_minus = view.child_toward(t, s)
        return RequestGeometry(Kind.CONVERGING, s, t, view.parent[s], t_minus, t, t_minus, -1)
    if m == s:
        s_plus = view.child_toward(s, t)
        return RequestGeometry(Kind.DIVERGING, s, t, s_plus, view.parent[t], s, -1, s_plus)
    return RequestGeometry(
        Kind.UNIMODAL, s, t, view.parent[s], view.parent[t], m,
        view.child_toward(m, s), view.child_toward(m, t),
    )


class GeometryTable(NamedTuple):
    """Column-wise geometry of many requests (numpy int arrays)."""

    kind: np.ndarray  # 0 converging, 1 diverging, 2 unimodal
    s: np.ndarray
    t: np.ndarray
    s_plus: np.ndarray
    t_minus: np.ndarray
    m: np.ndarray
    m_minus: np.ndarray
    m_plus: np.ndarray


KIND_CODES = (Kind.CONVERGING, Kind.DIVERGING, Kind.UNIMODAL)


def geometry_table(view: RootedView, requests: Sequence[Request]) -> GeometryTable:
    """Vectorised :func:`classify` for large request lists."""
    if len(requests) == 0:
        e = np.zeros(0, dtype=np.int64)
        return GeometryTable(e, e, e, e, e, e, e, e)
    arr = np.asarray(requests, dtype=np.int64).reshape(-1, 2)
    s, t = arr[:, 0], arr[:, 1]
    if np.any(s == t):
        raise InvalidRequest("request of length 0")
    m = view.lca_many(s, t)
    conv = m == t
    div = m == s
    uni = ~(conv | div)
    kind = np.where(conv, 0, np.where(div, 1, 2))
    depth = view.np_depth
    parent = view.np_parent

    below_m_on_s = view.ancestor_at_depth_many(s, np.where(conv | uni, depth[m] + 1, depth[s]))
    below_m_on_t = view.ancestor_at_depth_many(t, np.where(div | uni, depth[m] + 1, depth[t]))
    s_plus = np.where(div, below_m_on_t, parent[s])
    t_minus = np.where(conv, below_m_on_s, parent[t])
    m_minus = np.where(div, -1, below_m_on_s)
    m_plus = np.where(conv, -1, below_m_on_t)
    return GeometryTable(kind, s, t, s_plus, t_minus, m, m_minus, m_plus)


def classify_all(view: RootedView, requests: Sequence[Request]) -> list[RequestGeometry]:
    if len(requests) < 64:
        return [classify(view, r) for r in requests]
    g = geometry_table(view, requests)
    cols = [c.tolist() for c in g]
    return [
        RequestGeometry(KIND_CODES[k], s, t, sp, tm, m, mm, mp)
        for k, s, t, sp, tm, m, mm, mp in zip(*cols)
    ]


def reduce_instance(inst: Instance) -> tuple[Instance, VertexMapping]:
    """Contract every edge carrying no emission and no reception arc.

    The interference digraph is unchanged and request indices are kept.
    New vertex labels follow the smallest old vertex of each contracted
    component.
    """
    if not inst.requests:
        raise EmptyRequestSet("reducing an instance without requests collapses the tree")
    tree = inst.tree
    view = RootedView(tree, 0)
    g = geometry_table(view, inst.requests)
    # an edge {v, parent(v)} is identified by its child endpoint v
    keep = np.zeros(tree.n, dtype=bool)
    for a, b in ((g.s, g.s_plus), (g.t_minus, g.t)):
        child = np.where(view.np_parent[a] == b, a, b)
        keep[child] = True
    child = np.arange(tree.n)
    contract = (~keep) & (view.np_parent != NO_PARENT)
    cu = child[contract]
    cv = view.np_parent[cu]
    graph = coo_matrix((np.ones(len(cu)), (cu, cv)), shape=(tree.n, tree.n))
    _, labels = connected_components(graph, directed=False)
    smallest = np.full(labels.max() + 1, tree.n, dtype=np.int64)
    np.minimum.at(smallest, labels, np.arange(tree.n))
    rank = np.empty_like(smallest)
    rank[np.argsort(smallest, kind="stable")] = np.arange(len(smallest))
    forward = rank[labels]

    ku = child[keep & (view.np_parent != NO_PARENT)]
    kv = view.np_parent[ku]
    new_edges = list(zip(forward[ku].tolist(), forward[kv].tolist()))
    new_tree = build_tree(len(smallest), new_edges)
    fwd = forward.tolist()
    new_requests = tuple(Request(fwd[s], fwd[t]) for s, t in inst.requests)
    contracted = tuple(sorted((min(a, b), max(a, b)) for a, b in zip(cu.tolist(), cv.tolist())))
    return Instance(new_tree, new_requests), VertexMapping(tuple(fwd), contracted)


def subdivide_nice(inst: Instance) -> tuple[Instance, VertexMapping]:
    """Subdivide every edge so each request has length at least 2.

    The new vertex on edge ``(u, v)`` (``u < v``, ascending) is labelled
    ``n, n + 1, ...``; old vertices keep their labels.
    """
    tree = inst.tree
    edges = tree.edges()
    new_edges = []
    subdivided = []
    for i, (u, v) in enumerate(edges):
        w = tree.n + i
        new_edges += [(u, w), (w, v)]
        subdivided.append((u, v, w))
    new_tree = build_tree(tree.n + len(edges), new_edges)
    return (
        Instance(new_tree, inst.requests),
        VertexMapping(tuple(range(tree.n)), (), tuple(subdivided)),
    )


def is_reduced(inst: Instance) -> bool:
    """Every edge carries an emission or reception arc of some request."""
    view = RootedView(inst.tree, 0)
    marked = set()
    for g in classify_all(view, inst.requests):
        marked.add(frozenset(g.emission))
        marked.add(frozenset(g.reception))
    return all(frozenset(e) in marked for e in inst.tree.edges())
