"""Bidirected trees, rooted views and ancestor / LCA queries.

A bidirected tree is stored as an undirected tree: the edge ``{u, v}``
stands for the two opposite arcs ``(u, v)`` and ``(v, u)``.  Rooting the
tree at a vertex ``z`` produces a :class:`RootedView` holding parents,
depths, an Euler tour with first/last occurrence indices (``tin`` /
``tout``), a sparse table for constant-time LCA and a binary-lifting table
for level-ancestor queries.
"""
from __future__ import annotations

from bisect import bisect_right
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DisconnectedTree,
    DuplicateEdge,
    SelfLoop,
    VertexOutOfRange,
    WrongEdgeCount,
)

NO_PARENT = -1


@dataclass(frozen=True)
class BidirectedTree:
    n: int
    adjacency: tuple[tuple[int, ...], ...]

    def edges(self) -> list[tuple[int, int]]:
        """Undirected edges as ``(u, v)`` with ``u < v``, ascending."""
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise VertexOutOfRange(f"vertex {v} not in [0, {self.n})")


def build_tree(n: int, edges: Iterable[tuple[int, int]]) -> BidirectedTree:
    """Validate ``edges`` and build the tree on vertices ``0..n-1``."""
    if n < 1:
        raise WrongEdgeCount(f"a tree needs at least one vertex, got n={n}")
    edges = [(int(u), int(v)) for u, v in edges]
    if len(edges) != n - 1:
        raise WrongEdgeCount(f"expected {n - 1} edges for n={n}, got {len(edges)}")
    adj: list[list[int]] = [[] for _ in range(n)]
    seen: set[tuple[int, int]] = set()
    for u, v in edges:
        for w in (u, v):
            if not 0 <= w < n:
                raise VertexOutOfRange(f"edge ({u}, {v}): vertex {w} not in [0, {n})")
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdge(f"edge ({u}, {v}) given twice")
        seen.add(key)
        adj[u].append(v)
        adj[v].append(u)

    # n - 1 distinct edges: connected <=> acyclic <=> tree
    reached = [False] * n
    reached[0] = True
    queue = deque([0])
    count = 1
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if not reached[v]:
                reached[v] = True
                count += 1
                queue.append(v)
    if count != n:
        missing = reached.index(False)
        raise DisconnectedTree(f"vertex {missing} is not connected to vertex 0")
    return BidirectedTree(n, tuple(tuple(sorted(a)) for a in adj))


class RootedView:
    """Immutable rooted index over a :class:`BidirectedTree`.

    Children are visited in ascending vertex order, so the Euler tour and
    everything derived from it is deterministic.
    """

    def __init__(self, tree: BidirectedTree, root: int):
        tree.check_vertex(root)
        n = tree.n
        adjacency = tree.adjacency
        parent = [NO_PARENT] * n
        depth = [0] * n
        tin = [0] * n
        tout = [0] * n
        ptr = [0] * n
        euler = [root]
        stack = [root]
        while stack:
            v = stack[-1]
            nbrs = adjacency[v]
            i = ptr[v]
            pv = parent[v]
            while i < len(nbrs) and nbrs[i] == pv:
                i += 1
            if i < len(nbrs):
                c = nbrs[i]
                ptr[v] = i + 1
                parent[c] = v
                depth[c] = depth[v] + 1
                tin[c] = len(euler)
                euler.append(c)
                stack.append(c)
            else:
                stack.pop()
                tout[v] = len(euler) - 1
                if stack:
                    euler.append(stack[-1])

        self.tree = tree
        self.root = root
        self.n = n
        self.parent = parent
        self.depth = depth
        self.euler = euler
        self.tin = tin
        self.tout = tout
        self.children = tuple(
            tuple(c for c in adjacency[v] if c != parent[v]) for v in range(n)
        )
        self._child_tins = tuple(tuple(tin[c] for c in ch) for ch in self.children)

        self.np_parent = np.array(parent, dtype=np.int64)
        self.np_depth = np.array(depth, dtype=np.int64)
        self.np_tin = np.array(tin, dtype=np.int64)
        self.np_tout = np.array(tout, dtype=np.int64)
        self._np_euler = np.array(euler, dtype=np.int64)
        self._build_sparse_table()
        self._build_lifting()

    # -- preprocessing ----------------------------------------------------

    def _build_sparse_table(self) -> None:
        edepth = self.np_depth[self._np_euler]
        self._edepth = edepth
        m = len(edepth)
        levels = [np.arange(m, dtype=np.int64)]
        span = 1
        while 2 * span <= m:
            prev = levels[-1]
            left = prev[: m - 2 * span + 1]
            right = prev[span : m - span + 1]
            levels.append(np.where(edepth[left] <= edepth[right], left, right))
            span *= 2
        self._sparse = levels

    def _build_lifting(self) -> None:
        up0 = self.np_parent.copy()
        up0[self.root] = self.root
        up = [up0]
        max_depth = int(self.np_depth.max()) if self.n else 0
        while (1 << len(up)) <= max_depth:
            up.append(up[-1][up[-1]])
        self._up = up

    # -- scalar queries ---------------------------------------------------

    def is_ancestor(self, x: int, y: int) -> bool:
        """``x`` is an ancestor of ``y`` (reflexive)."""
        return self.tin[x] <= self.tin[y] <= self.tout[x]

    def related(self, x: int, y: int) -> bool:
        tin = self.tin
        tout = self.tout
        return tin[x] <= tin[y] <= tout[x] or tin[y] <= tin[x] <= tout[y]

    def lca(self, x: int, y: int) -> int:
        lo, hi = self.tin[x], self.tin[y]
        if lo > hi:
            lo, hi = hi, lo
        k = (hi - lo + 1).bit_length() - 1
        level = self._sparse[k]
        a = int(level[lo])
        b = int(level[hi - (1 << k) + 1])
        return self.euler[a if self._edepth[a] <= self._edepth[b] else b]

    def ancestor_at_depth(self, x: int, d: int) -> int:
        diff = self.depth[x] - d
        if diff < 0:
            raise ValueError(f"vertex {x} has depth {self.depth[x]} < {d}")
        k = 0
        while diff:
            if diff & 1:
                x = int(self._up[k][x])
            diff >>= 1
            k += 1
        return x

    def child_toward(self, x: int, y: int) -> int:
        """The child of ``x`` on the way down to its strict descendant ``y``."""
        i = bisect_right(self._child_tins[x], self.tin[y]) - 1
        return self.children[x][i]

    def path(self, x: int, y: int) -> list[int]:
        """Vertex sequence of the directed path from ``x`` to ``y``."""
        m = self.lca(x, y)
        up = [x]
        while up[-1] != m:
            up.append(self.parent[up[-1]])
        down = [y]
        while down[-1] != m:
            down.append(self.parent[down[-1]])
        down.pop()
        return up + down[::-1]

    # -- vectorised queries -------------------------------------------------

    def lca_many(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        a = self.np_tin[xs]
        b = self.np_tin[ys]
        lo = np.minimum(a, b)
        hi = np.maximum(a, b)
        length = hi - lo + 1
        k = np.floor(np.log2(length)).astype(np.int64)
        # guard against floating-point error at exact powers of two
        k -= (1 << k) > length
        k += (1 << (k + 1)) <= length
        out = np.empty(len(lo), dtype=np.int64)
        for level in np.unique(k):
            mask = k == level
            table = self._sparse[level]
            p = table[lo[mask]]
            q = table[hi[mask] - (1 << int(level)) + 1]
            pick = np.where(self._edepth[p] <= self._edepth[q], p, q)
            out[mask] = self._np_euler[pick]
        return out

    def ancestor_at_depth_many(self, xs: np.ndarray, ds: np.ndarray) -> np.ndarray:
        xs = np.array(xs, dtype=np.int64, copy=True)
        diff = self.np_depth[xs] - ds
        k = 0
        while np.any(diff):
            mask = (diff & 1).astype(bool)
            xs[mask] = self._up[k][xs[mask]]
            diff >>= 1
            k += 1
        return xs

    def is_ancestor_many(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        ty = self.np_tin[ys]
        return (self.np_tin[xs] <= ty) & (ty <= self.np_tout[xs])


def root_view(tree: BidirectedTree, z: int) -> RootedView:
    return RootedView(tree, z)


def is_ancestor(view: RootedView, x: int, y: int) -> bool:
    return view.is_ancestor(x, y)


def lca(view: RootedView, x: int, y: int) -> int:
    return view.lca(x, y)


def directed_path(tree: BidirectedTree, x: int, y: int) -> list[int]:
    """The unique path from ``x`` to ``y``, found by breadth-first search."""
    tree.check_vertex(x)
    tree.check_vertex(y)
    if x == y:
        return [x]
    prev = {x: x}
    queue = deque([x])
    while queue:
        u = queue.popleft()
        if u == y:
            break
        for v in tree.adjacency[u]:
            if v not in prev:
                prev[v] = u
                queue.append(v)
    out = [y]
    while out[-1] != x:
        out.append(prev[out[-1]])
    return out[::-1]


def leaves(tree: BidirectedTree) -> list[int]:
    if tree.n == 1:
        return [0]
    return [v for v in range(tree.n) if len(tree.adjacency[v]) == 1]


def path_arcs(path: Sequence[int]) -> list[tuple[int, int]]:
    return list(zip(path, path[1:]))
