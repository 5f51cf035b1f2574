"""Exhaustive reference computations for small instances.

Nothing here imports the fast modules: paths are found by plain search on
the edge list and every quantity is computed by enumeration, so a bug in
the fast code cannot hide behind a matching bug here.
"""
from __future__ import annotations

from itertools import product
from typing import Sequence

from .errors import TooLarge
from .instance import Instance, Request

ALPHA_LIMIT = 24
OMEGA_LIMIT = 24
CHI_LIMIT = 16
LIST_LIMIT = 14


def _path(adj: list[list[int]], x: int, y: int) -> list[int]:
    prev = {x: None}
    stack = [x]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in prev:
                prev[v] = u
                stack.append(v)
    out = [y]
    while prev[out[-1]] is not None:
        out.append(prev[out[-1]])
    return out[::-1]


def _adjacency_lists(inst: Instance) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(inst.tree.n)]
    for u, v in inst.tree.edges():
        adj[u].append(v)
        adj[v].append(u)
    return adj


def oracle_interferes(tree, r: Request, r2: Request) -> bool:
    adj: list[list[int]] = [[] for _ in range(tree.n)]
    for u, v in tree.edges():
        adj[u].append(v)
        adj[v].append(u)
    return _interferes(adj, r, r2)


def _interferes(adj, r, r2) -> bool:
    p = _path(adj, r[0], r2[1])
    if len(p) < 2:
        return False
    first = _path(adj, r[0], r[1])[:2]
    last = _path(adj, r2[0], r2[1])[-2:]
    return p[:2] == first and p[-2:] == last


def oracle_graph(inst: Instance) -> list[int]:
    """Undirected interference graph as neighbour bitmasks."""
    adj = _adjacency_lists(inst)
    reqs = inst.requests
    m = len(reqs)
    masks = [0] * m
    for i in range(m):
        for j in range(i + 1, m):
            if _interferes(adj, reqs[i], reqs[j]) or _interferes(adj, reqs[j], reqs[i]):
                masks[i] |= 1 << j
                masks[j] |= 1 << i
    return masks


def oracle_arcs(inst: Instance) -> set[tuple[int, int]]:
    adj = _adjacency_lists(inst)
    reqs = inst.requests
    return {
        (i, j)
        for i in range(len(reqs))
        for j in range(len(reqs))
        if i != j and _interferes(adj, reqs[i], reqs[j])
    }


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _max_clique(masks: list[int], candidates: int) -> int:
    best = 0

    def grow(current: int, cand: int) -> None:
        nonlocal best
        if cand == 0:
            if current.bit_count() > best.bit_count():
                best = current
            return
        if current.bit_count() + cand.bit_count() <= best.bit_count():
            return
        v = (cand & -cand).bit_length() - 1
        grow(current | (1 << v), cand & masks[v])
        grow(current, cand & ~(1 << v))

    grow(0, candidates)
    return best


def _guard(inst_or_size, limit: int, what: str) -> None:
    size = inst_or_size if isinstance(inst_or_size, int) else len(inst_or_size.requests)
    if size > limit:
        raise TooLarge(f"{what} oracle limited to {limit} requests, got {size}")


def oracle_alpha(inst: Instance) -> tuple[int, list[int]]:
    _guard(inst, ALPHA_LIMIT, "alpha")
    masks = oracle_graph(inst)
    m = len(masks)
    full = (1 << m) - 1
    comp = [full & ~masks[i] & ~(1 << i) for i in range(m)]
    best = _max_clique(comp, full)
    return best.bit_count(), _bits(best)


def oracle_omega(inst: Instance) -> tuple[int, list[int]]:
    _guard(inst, OMEGA_LIMIT, "omega")
    masks = oracle_graph(inst)
    best = _max_clique(masks, (1 << len(masks)) - 1)
    return best.bit_count(), _bits(best)


def _colourable(masks: list[int], order: list[int], k: int) -> list[int] | None:
    m = len(masks)
    colour = [0] * m

    def place(pos: int, used: int) -> bool:
        if pos == len(order):
            return True
        v = order[pos]
        taken = {colour[u] for u in _bits(masks[v]) if colour[u]}
        for c in range(1, min(used + 1, k) + 1):
            if c not in taken:
                colour[v] = c
                if place(pos + 1, max(used, c)):
                    return True
                colour[v] = 0
        return False

    return colour if place(0, 0) else None


def oracle_chi(inst: Instance) -> tuple[int, list[int]]:
    """Exact chromatic number by backtracking over increasing budgets."""
    _guard(inst, CHI_LIMIT, "chi")
    masks = oracle_graph(inst)
    m = len(masks)
    if m == 0:
        return 0, []
    lower = max(1, _max_clique(masks, (1 << m) - 1).bit_count())
    order = sorted(range(m), key=lambda v: (-masks[v].bit_count(), v))
    for k in range(lower, m + 1):
        colouring = _colourable(masks, order, k)
        if colouring is not None:
            return k, colouring
    raise AssertionError("unreachable: m colours always suffice")


def oracle_list_color(
    edges: Sequence[tuple[int, int]], lists: Sequence[Sequence[int]]
) -> list[int] | None:
    """Exhaustive list colouring of the graph on ``len(lists)`` vertices."""
    _guard(len(lists), LIST_LIMIT, "list colouring")
    n = len(lists)
    nbr = [set() for _ in range(n)]
    for u, v in edges:
        nbr[u].add(v)
        nbr[v].add(u)
    for choice in product(*[sorted(set(l)) for l in lists]):
        if all(choice[u] != choice[v] for u in range(n) for v in nbr[u]):
            return list(choice)
    return None


def is_proper(inst: Instance, colours: Sequence[int]) -> bool:
    masks = oracle_graph(inst)
    return all(
        colours[i] != colours[j] for i in range(len(masks)) for j in _bits(masks[i])
    )
