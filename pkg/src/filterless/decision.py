"""Exact k-colourability of interference graphs.

``k = 3`` uses a small dominating set (or a comparability certificate) and
2-list colouring; ``k >= 4`` uses the fixed-parameter search over the
exceptional requests of a colouring.  ``decide`` dispatches on ``k``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .coloring import (
    MAINLY_CONVERGING,
    MAINLY_DIVERGING,
    UNIMODAL,
    Coloring,
    color_converging,
    color_diverging,
    is_proper,
)
from .clique import bipartite_max_matching
from .errors import BudgetTooSmall, EmptyRequestSet, InternalContradiction, ReductionRequired
from .instance import Instance, Kind, classify_all, reduce_instance
from .interference import InterferenceDigraph, build_digraph
from .tree import RootedView, leaves, path_arcs


@dataclass(frozen=True)
class DominatingOrComparability:
    """Either a dominating set of at most three requests or a root witness.

    With ``converse`` set, the witness root makes every request diverging
    rather than converging.
    """

    dominating: tuple[int, ...] | None = None
    root: int | None = None
    converse: bool = False


@dataclass(frozen=True)
class ExceptionalChoice:
    q_minus: tuple[int, ...]
    q_plus: tuple[int, ...]
    matching: tuple[tuple[int, int], ...]


def _compact(colours: Sequence[int]) -> tuple[int, ...]:
    rank = {c: k + 1 for k, c in enumerate(sorted(set(colours)))}
    return tuple(rank[c] for c in colours)


def _dominates(dg: InterferenceDigraph, members: Sequence[int]) -> bool:
    chosen = set(members)
    return all(
        j in chosen or dg.neighbours(j) & chosen for j in range(dg.m)
    )


def dominating_or_comparability(inst: Instance) -> DominatingOrComparability:
    tree = inst.tree
    ends = [v for v in leaves(tree) if tree.degree(v) == 1]
    endpoints = {v for r in inst.requests for v in r}
    for v in ends:
        if v not in endpoints:
            raise ReductionRequired(f"leaf {v} lies in no request; reduce first")
    if not inst.requests:
        raise EmptyRequestSet("no requests")
    if not ends:
        # single vertex cannot carry a request; two-vertex trees have leaves
        raise ReductionRequired("tree has no leaves")

    s1 = ends[0]
    r1 = next(i for i, (s, t) in enumerate(inst.requests) if s1 in (s, t))
    flip = inst.requests[r1].t == s1
    work = inst.converse() if flip else inst

    view1 = RootedView(tree, s1)
    arcsets = [set(path_arcs(view1.path(s, t))) for s, t in work.requests]
    heads = {v for arcs in arcsets for u, v in arcs if view1.parent[v] == u}
    t2 = min(heads, key=lambda v: (-view1.depth[v], v))
    a2 = (view1.parent[t2], t2)
    r2 = next(i for i, arcs in enumerate(arcsets) if a2 in arcs)

    dg = build_digraph(work)
    base = {r1, r2}
    rest = [
        j for j in range(len(work.requests))
        if j not in base and not (dg.neighbours(j) & base)
    ]
    if not rest:
        return DominatingOrComparability(tuple(sorted(base)), converse=flip)

    def first_verified(cands: list[int]) -> DominatingOrComparability | None:
        for r in cands:
            s = tuple(sorted(base | {r}))
            if _dominates(dg, s):
                return DominatingOrComparability(s, converse=flip)
        if cands:
            raise InternalContradiction(
                f"no candidate among {cands} completes {sorted(base)} to a dominating set"
            )
        return None

    spine = set(path_arcs(view1.path(t2, s1)))
    spine |= {(v, u) for u, v in spine}
    found = first_verified([r for r in rest if arcsets[r] & spine])
    if found:
        return found

    view2 = RootedView(tree, t2)
    away = [r for r, arcs in enumerate(arcsets) if any(view2.parent[v] == u for u, v in arcs)]
    found = first_verified(away)
    if found:
        return found

    for i, g in enumerate(classify_all(view2, work.requests)):
        if g.kind is not Kind.CONVERGING:
            raise InternalContradiction(f"request {i} is {g.kind.value} under witness root {t2}")
    return DominatingOrComparability(root=t2, converse=flip)


def _tarjan(n: int, adj: list[list[int]]) -> list[int]:
    """Strongly connected components, numbered in reverse topological order."""
    index = [-1] * n
    low = [0] * n
    comp = [-1] * n
    on_stack = [False] * n
    stack: list[int] = []
    counter = ncomp = 0
    for root in range(n):
        if index[root] >= 0:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, k = work[-1]
            if k < len(adj[v]):
                work[-1] = (v, k + 1)
                w = adj[v][k]
                if index[w] < 0:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp


def two_list_color(
    digraph: InterferenceDigraph, lists: Sequence[Sequence[int]]
) -> list[int] | None:
    """Proper colouring choosing each vertex's colour from its list of size <= 2.

    2-SAT: literal ``2v`` means "v takes the first colour of its sorted list".
    """
    opts = [sorted(set(l)) for l in lists]
    if any(len(o) == 0 for o in opts):
        return None
    if any(len(o) > 2 for o in opts):
        raise ValueError("lists must have at most two colours")
    n = len(opts)
    adj: list[list[int]] = [[] for _ in range(2 * n)]

    def clause(a: int, b: int) -> None:
        # a or b
        adj[a ^ 1].append(b)
        adj[b ^ 1].append(a)

    def lit(v: int, c: int) -> int | None:
        o = opts[v]
        if c == o[0]:
            return 2 * v
        if len(o) == 2 and c == o[1]:
            return 2 * v + 1
        return None

    for v, o in enumerate(opts):
        if len(o) == 1:
            clause(2 * v, 2 * v)
    for u, v in digraph.edges():
        for c in opts[u]:
            a, b = lit(u, c), lit(v, c)
            if a is not None and b is not None:
                clause(a ^ 1, b ^ 1)
    comp = _tarjan(2 * n, adj)
    out = []
    for v in range(n):
        if comp[2 * v] == comp[2 * v + 1]:
            return None
        first = comp[2 * v] < comp[2 * v + 1]
        out.append(opts[v][0] if first else opts[v][1])
    return out


def decide_3col(inst: Instance) -> Coloring | None:
    if not inst.requests:
        return Coloring(())
    reduced, _ = reduce_instance(inst)
    dg = build_digraph(reduced)
    verdict = dominating_or_comparability(reduced)
    if verdict.dominating is None:
        view = RootedView(reduced.tree, verdict.root)
        colourer = color_diverging if verdict.converse else color_converging
        col = colourer(view, reduced)
        return col if col.num_colours <= 3 else None

    S = list(verdict.dominating)
    for choice in product((1, 2, 3), repeat=len(S)):
        fixed = dict(zip(S, choice))
        if any(fixed[a] == fixed[b] for a in S for b in S if a < b and dg.adjacent(a, b)):
            continue
        lists = []
        for j in range(len(reduced.requests)):
            if j in fixed:
                lists.append([fixed[j]])
            else:
                banned = {fixed[a] for a in dg.neighbours(j) if a in fixed}
                lists.append([c for c in (1, 2, 3) if c not in banned])
        colours = two_list_color(dg, lists)
        if colours is not None:
            return Coloring(_compact(colours))
    return None


def _branch_cliques(view: RootedView, members: list[int], node: list[int], k: int) -> list[tuple[int, ...]]:
    """Every subset (size <= k) of requests whose key node lies on one root-to-leaf branch."""
    tips = [v for v in range(view.n) if not view.children[v]]
    seen: set[tuple[int, ...]] = set()
    out: list[tuple[int, ...]] = []
    for leaf in tips:
        on_branch = [i for i in members if view.is_ancestor(node[i], leaf)]
        for mask in range(1 << len(on_branch)):
            if mask.bit_count() > k:
                continue
            sub = tuple(on_branch[b] for b in range(len(on_branch)) if mask >> b & 1)
            if sub not in seen:
                seen.add(sub)
                out.append(sub)
    return out


def _branch_overloaded(view: RootedView, inst: Instance, k: int) -> bool:
    """Does some in- or out-branch share an arc with more than k requests?"""
    arcsets = [set(path_arcs(view.path(s, t))) for s, t in inst.requests]
    for leaf in range(view.n):
        if view.children[leaf]:
            continue
        down = set(path_arcs(view.path(view.root, leaf)))
        up = {(v, u) for u, v in down}
        for branch in (down, up):
            if sum(1 for arcs in arcsets if arcs & branch) > k:
                return True
    return False


def _is_clique(dg: InterferenceDigraph, members: Sequence[int]) -> bool:
    return all(
        dg.adjacent(members[a], members[b])
        for a in range(len(members))
        for b in range(a + 1, len(members))
    )


def decide_kcol(inst: Instance, k: int) -> Coloring | None:
    if k < 4:
        raise BudgetTooSmall(f"k = {k}; use decide_3col for k <= 3")
    m = len(inst.requests)
    if m == 0:
        return Coloring(())
    view = RootedView(inst.tree, 0)
    geo = classify_all(view, inst.requests)
    conv = [i for i, g in enumerate(geo) if g.kind is Kind.CONVERGING]
    div = [i for i, g in enumerate(geo) if g.kind is Kind.DIVERGING]
    uni = [i for i, g in enumerate(geo) if g.kind is Kind.UNIMODAL]
    if len(uni) > 2 * k or _branch_overloaded(view, inst, k):
        return None

    dg = build_digraph(inst)
    tin, tout = view.tin, view.tout
    div_order = sorted(div, key=lambda i: (tin[geo[i].s_plus], i))
    conv_order = sorted(conv, key=lambda i: (tin[geo[i].t_minus], i))
    earlier: dict[int, list[int]] = {}
    for order in (div_order, conv_order):
        pos = {r: p for p, r in enumerate(order)}
        for r in order:
            earlier[r] = [x for x in dg.neighbours(r) if x in pos and pos[x] < pos[r]]

    conv_cliques = _branch_cliques(view, conv, [g.t_minus for g in geo], k)
    div_cliques = _branch_cliques(view, div, [g.s_plus for g in geo], k)

    for assign in product((0, 1, 2), repeat=len(uni)):
        uni_minus = [u for u, a in zip(uni, assign) if a == 1]
        uni_plus = [u for u, a in zip(uni, assign) if a == 2]
        plain = [u for u, a in zip(uni, assign) if a == 0]
        if len(plain) % 2:
            continue
        if len(uni_minus) + len(uni_plus) + len(plain) // 2 > k:
            continue
        if not (_is_clique(dg, uni_minus) and _is_clique(dg, uni_plus)):
            continue
        part_a = [u for u in plain if geo[u].m_minus < geo[u].m_plus]
        part_b = [u for u in plain if geo[u].m_minus > geo[u].m_plus]
        free = [(a, b) for a in part_a for b in part_b if not dg.adjacent(a, b)]
        matching = bipartite_max_matching(part_a, part_b, free)
        if 2 * len(matching) != len(plain):
            continue
        for cq in conv_cliques:
            q_minus = list(cq) + uni_minus
            if len(q_minus) + len(uni_plus) + len(matching) > k or not _is_clique(dg, q_minus):
                continue
            for dq in div_cliques:
                q_plus = list(dq) + uni_plus
                if len(q_minus) + len(q_plus) + len(matching) > k or not _is_clique(dg, q_plus):
                    continue
                col = _extend(geo, dg, tout, q_minus, q_plus, matching, div_order, conv_order, earlier, k)
                if col is not None:
                    return col
    return None


def _extend(geo, dg, tout, q_minus, q_plus, matching, div_order, conv_order, earlier, k) -> Coloring | None:
    colour: dict[int, int] = {}
    q_minus = sorted(q_minus, key=lambda i: (tout[geo[i].s], i))
    q_plus = sorted(q_plus, key=lambda i: (tout[geo[i].t], i))
    t, t2 = len(q_minus), len(q_plus)
    for c, r in enumerate(q_minus + q_plus, start=1):
        colour[r] = c
    for c, (a, b) in enumerate(matching, start=t + t2 + 1):
        colour[a] = colour[b] = c
    used = t + t2 + len(matching)

    def greedy(order, lo, hi, skip):
        for r in order:
            if r in skip:
                continue
            taken = {colour[x] for x in dg.neighbours(r) if x in colour}
            for c in range(lo, hi + 1):
                if c not in taken:
                    colour[r] = c
                    break

    exceptional = set(q_minus) | set(q_plus)
    greedy(div_order, 1, t, exceptional)
    greedy(conv_order, t + 1, t + t2, exceptional)

    tags = [MAINLY_DIVERGING] * t + [MAINLY_CONVERGING] * t2 + [UNIMODAL] * len(matching)
    for order, tag in ((div_order, MAINLY_DIVERGING), (conv_order, MAINLY_CONVERGING)):
        base = used
        for r in order:
            if r in colour:
                continue
            taken = {colour[x] for x in earlier[r] if x in colour}
            c = base + 1
            while c in taken:
                c += 1
            colour[r] = c
            used = max(used, c)
            if used > k:
                return None
        tags += [tag] * (used - base)
    colours = tuple(colour[i] for i in range(len(geo)))
    choice = ExceptionalChoice(tuple(q_minus), tuple(q_plus), tuple(matching))
    result = Coloring(colours, tags=tuple(tags), detail=choice)
    if not is_proper(dg, result):
        raise InternalContradiction("k-colouring search produced an improper colouring")
    return result


def _bipartition(dg: InterferenceDigraph) -> list[int] | None:
    side = [0] * dg.m
    for start in range(dg.m):
        if side[start]:
            continue
        side[start] = 1
        stack = [start]
        while stack:
            u = stack.pop()
            for v in dg.neighbours(u):
                if not side[v]:
                    side[v] = 3 - side[u]
                    stack.append(v)
                elif side[v] == side[u]:
                    return None
    return side


def decide(inst: Instance, k: int) -> Coloring | None:
    """A proper colouring with at most ``k`` colours, or ``None`` if none exists."""
    if not inst.requests:
        return Coloring(())
    if k <= 0:
        return None
    if k <= 2:
        dg = build_digraph(inst)
        if k == 1:
            return Coloring((1,) * dg.m) if not dg.edges() else None
        side = _bipartition(dg)
        return Coloring(_compact(side)) if side is not None else None
    if k == 3:
        return decide_3col(inst)
    return decide_kcol(inst, k)
