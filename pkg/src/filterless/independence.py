"""Maximum independent set of the interference graph in O(|R| log |R| + |T|).

Outline (tree rooted at vertex 0):

* diverging requests interfere exactly when their second vertices are
  related, so a largest independent diverging set is one request per
  descendant-free node among those second vertices;
* such a set of size >= 2 can take one more converging or unimodal
  request iff that request starts at an ancestor of the LCA of the chosen
  targets;
* the converging side is symmetric;
* if both sides stay below 2, look for any non-interfering pair with
  Euler-tour range queries.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyInstance
from .instance import GeometryTable, Instance, geometry_table
from .rangequery import points_in_boxes, stabbing_sweep
from .tree import RootedView

CONV, DIV, UNI = 0, 1, 2


@dataclass(frozen=True)
class IndependentSet:
    members: tuple[int, ...]
    root: int
    branch: str  # "diverging", "converging", "pair" or "single"
    extension: int | None = None
    trace: dict = field(default_factory=dict, compare=False)

    def __len__(self) -> int:
        return len(self.members)


def _deepest_representatives(view: RootedView, idx: np.ndarray, nodes: np.ndarray) -> list[int]:
    """Lowest request index per node of ``nodes`` having no strict descendant among them."""
    if len(idx) == 0:
        return []
    uniq, first = np.unique(nodes, return_index=True)
    reps = idx[first]
    tin = view.np_tin[uniq]
    tout = view.np_tout[uniq]
    order = np.argsort(tin)
    tin, tout, reps = tin[order], tout[order], reps[order]
    has_desc = np.zeros(len(uniq), dtype=bool)
    has_desc[:-1] = tin[1:] <= tout[:-1]
    return sorted(reps[~has_desc].tolist())


def _set_lca(view: RootedView, vertices: np.ndarray) -> int:
    tins = view.np_tin[vertices]
    return view.lca(int(vertices[np.argmin(tins)]), int(vertices[np.argmax(tins)]))


def _first_ancestor_of(view: RootedView, cand: np.ndarray, starts: np.ndarray, x: int) -> int | None:
    """Smallest index in ``cand`` whose vertex in ``starts`` is an ancestor of ``x``."""
    if len(cand) == 0:
        return None
    v = starts[cand]
    ok = (view.np_tin[v] <= view.tin[x]) & (view.tin[x] <= view.np_tout[v])
    hits = cand[ok]
    return int(hits[0]) if len(hits) else None


def max_independent_set(inst: Instance) -> IndependentSet:
    if not inst.requests:
        raise EmptyInstance("no requests")
    root = 0
    view = RootedView(inst.tree, root)
    g = geometry_table(view, inst.requests)
    div = np.nonzero(g.kind == DIV)[0]
    conv = np.nonzero(g.kind == CONV)[0]
    not_div = np.nonzero(g.kind != DIV)[0]
    not_conv = np.nonzero(g.kind != CONV)[0]

    plus = _deepest_representatives(view, div, g.s_plus[div])
    minus = _deepest_representatives(view, conv, g.t_minus[conv])
    plus_ext = minus_ext = None
    if len(plus) >= 2:
        x0 = _set_lca(view, g.t[plus])
        plus_ext = _first_ancestor_of(view, not_div, g.s, x0)
    if len(minus) >= 2:
        x0 = _set_lca(view, g.s[minus])
        minus_ext = _first_ancestor_of(view, not_conv, g.t, x0)
    cand_plus = plus + ([plus_ext] if plus_ext is not None else [])
    cand_minus = minus + ([minus_ext] if minus_ext is not None else [])
    trace = {"alpha_plus": len(plus), "alpha_minus": len(minus)}

    if len(cand_plus) >= len(cand_minus):
        best, branch, ext = cand_plus, "diverging", plus_ext
    else:
        best, branch, ext = cand_minus, "converging", minus_ext
    if len(best) >= 2:
        return IndependentSet(tuple(sorted(best)), root, branch, ext, trace)
    pair = _find_pair(view, g)
    if pair is not None:
        return IndependentSet(pair, root, "pair", None, trace)
    if best:
        return IndependentSet(tuple(best), root, branch, None, trace)
    return IndependentSet((0,), root, "single", None, trace)


def find_independent_pair(inst: Instance, root: int = 0) -> tuple[int, int] | None:
    """Some pair of non-interfering requests, or ``None`` if the graph is complete."""
    if len(inst.requests) < 2:
        return None
    view = RootedView(inst.tree, root)
    return _find_pair(view, geometry_table(view, inst.requests))


def _find_pair(view: RootedView, g: GeometryTable) -> tuple[int, int] | None:
    tin, tout = view.tin, view.tout
    kind = g.kind.tolist()
    s, t, m = g.s.tolist(), g.t.tolist(), g.m.tolist()
    sp, tm, mm, mp = g.s_plus.tolist(), g.t_minus.tolist(), g.m_minus.tolist(), g.m_plus.tolist()
    R = {CONV: [], DIV: [], UNI: []}
    for i, k in enumerate(kind):
        R[k].append(i)

    def found(pair):
        return tuple(sorted(pair)) if pair is not None else None

    # converging / diverging: related endpoints s_conv and t_div
    pair = _containment_1d(
        R[DIV], [tin[t[i]] for i in R[DIV]], [tout[t[i]] for i in R[DIV]],
        R[CONV], [tin[s[i]] for i in R[CONV]],
    ) or _containment_1d(
        R[CONV], [tin[s[i]] for i in R[CONV]], [tout[s[i]] for i in R[CONV]],
        R[DIV], [tin[t[i]] for i in R[DIV]],
    )
    if pair:
        return found(pair)

    # unimodal / unimodal, within one middle
    groups: dict[int, list[int]] = {}
    for i in R[UNI]:
        groups.setdefault(m[i], []).append(i)
    for x in sorted(groups):
        X = groups[x]
        if len(X) < 2:
            continue
        pair = points_in_boxes(
            [(tin[t[j]], tin[s[j]], j) for j in X],
            [(tin[s[i]], tout[s[i]], tin[t[i]], tout[t[i]], i) for i in X],
        )
        if pair:
            return found(pair)
        A = [i for i in X if mm[i] < mp[i]]
        B = [i for i in X if mm[i] > mp[i]]
        for P, Q in ((A, B), (B, A)):
            pair = stabbing_sweep(
                [(tin[s[i]], tout[s[i]], tin[t[i]], i) for i in P],
                [(tin[t[j]], tin[s[j]], tout[s[j]], j) for j in Q],
            ) or stabbing_sweep(
                [(tin[t[i]], tout[t[i]], tin[s[i]], i) for i in P],
                [(tin[s[j]], tin[t[j]], tout[t[j]], j) for j in Q],
            )
            if pair:
                return found(pair)

    U = R[UNI]
    if U:
        # unimodal r / diverging r2: m_r <= s_r2 and s_r, t_r2 related
        pair = points_in_boxes(
            [(tin[s[j]], tin[t[j]], j) for j in R[DIV]],
            [(tin[m[i]], tout[m[i]], tin[s[i]], tout[s[i]], i) for i in U],
        ) or stabbing_sweep(
            [(tin[t[j]], tout[t[j]], tin[s[j]], j) for j in R[DIV]],
            [(tin[s[i]], tin[m[i]], tout[m[i]], i) for i in U],
        )
        if pair:
            return found(pair)
        # unimodal r / converging r2: m_r <= t_r2 and t_r, s_r2 related
        pair = points_in_boxes(
            [(tin[t[j]], tin[s[j]], j) for j in R[CONV]],
            [(tin[m[i]], tout[m[i]], tin[t[i]], tout[t[i]], i) for i in U],
        ) or stabbing_sweep(
            [(tin[s[j]], tout[s[j]], tin[t[j]], j) for j in R[CONV]],
            [(tin[t[i]], tin[m[i]], tout[m[i]], i) for i in U],
        )
        if pair:
            return found(pair)

    # same-kind pairs: two unrelated second vertices (resp. penultimate)
    for cls, nodes in ((DIV, sp), (CONV, tm)):
        idx = np.array(R[cls], dtype=np.int64)
        reps = _deepest_representatives(view, idx, np.array([nodes[i] for i in R[cls]], dtype=np.int64))
        if len(reps) >= 2:
            return found((reps[0], reps[1]))
    return None


def _containment_1d(queriers, lo, hi, targets, keys) -> tuple[int, int] | None:
    """First querier whose ``[lo, hi]`` contains the key of some target."""
    if not queriers or not targets:
        return None
    pts = sorted(zip(keys, targets))
    ks = [p[0] for p in pts]
    for q, a, b in zip(queriers, lo, hi):
        i = bisect_left(ks, a)
        if i < len(ks) and ks[i] <= b:
            j = bisect_right(ks, b)
            return q, min(p[1] for p in pts[i:j])
    return None
