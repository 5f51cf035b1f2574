"""Colourings of the interference graph.

Converging requests conflict exactly when their penultimate vertices are
related, so colouring them by height along root-to-leaf chains is optimal;
diverging requests are the mirror image on second vertices.  Unimodal
requests form a join, over middles, of cobipartite pieces, each coloured
optimally through a matching of non-interfering pairs.  Stacking the three
blocks gives a colouring within twice the optimum, and picking the root
carefully on a subdivided tree brings it within twice the clique number.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .clique import bipartite_max_matching, max_clique
from .errors import InternalContradiction, NotConverging, NotDiverging, NotNicePair, NotUnimodal
from .independence import max_independent_set
from .instance import Instance, Kind, RequestGeometry, classify, classify_all, subdivide_nice
from .interference import InterferenceDigraph
from .tree import RootedView, leaves, path_arcs

MAINLY_CONVERGING = "mainly-converging"
MAINLY_DIVERGING = "mainly-diverging"
UNIMODAL = "unimodal"


@dataclass(frozen=True)
class Coloring:
    """Colours ``1..num_colours`` for the requests listed in ``indices``.

    ``indices`` defaults to every request of the instance, in order.
    ``tags`` optionally labels each colour (position ``c - 1``);
    ``detail`` carries solver-specific bookkeeping.
    """

    colours: tuple[int, ...]
    indices: tuple[int, ...] | None = None
    tags: tuple[str, ...] | None = None
    detail: object = field(default=None, compare=False)

    @property
    def num_colours(self) -> int:
        return max(self.colours, default=0)

    def items(self) -> Iterable[tuple[int, int]]:
        idx = self.indices if self.indices is not None else range(len(self.colours))
        return zip(idx, self.colours)

    def as_dict(self) -> dict[int, int]:
        return dict(self.items())

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.num_colours)]
        for i, c in self.items():
            out[c - 1].append(i)
        return out


def is_proper(digraph: InterferenceDigraph, coloring: Coloring) -> bool:
    col = coloring.as_dict()
    return all(col[i] != col[j] for i, j in digraph.arcs() if i in col and j in col)


def _chain_height(view: RootedView, keys: Sequence[int]) -> list[int]:
    """Colour items keyed by tree nodes so that related keys differ.

    Item colour = number of items at strict ancestors + rank at its own node.
    """
    at_node: dict[int, int] = {}
    for v in keys:
        at_node[v] = at_node.get(v, 0) + 1
    above = [0] * view.n
    order = sorted(range(view.n), key=view.tin.__getitem__)
    for v in order:
        p = view.parent[v]
        if p >= 0:
            above[v] = above[p] + at_node.get(p, 0)
    seen: dict[int, int] = {}
    out = []
    for v in keys:
        seen[v] = seen.get(v, 0) + 1
        out.append(above[v] + seen[v])
    return out


def _geometries(view: RootedView, inst: Instance, subset) -> tuple[list[int], list[RequestGeometry]]:
    subset = list(range(len(inst.requests)) if subset is None else subset)
    return subset, [classify(view, inst.requests[i]) for i in subset]


def color_converging(view: RootedView, inst: Instance, subset: Sequence[int] | None = None) -> Coloring:
    subset, geo = _geometries(view, inst, subset)
    for i, g in zip(subset, geo):
        if g.kind is not Kind.CONVERGING:
            raise NotConverging(f"request {i} is {g.kind.value} under root {view.root}")
    colours = _chain_height(view, [g.t_minus for g in geo])
    return Coloring(tuple(colours), tuple(subset))


def color_diverging(view: RootedView, inst: Instance, subset: Sequence[int] | None = None) -> Coloring:
    subset, geo = _geometries(view, inst, subset)
    for i, g in zip(subset, geo):
        if g.kind is not Kind.DIVERGING:
            raise NotDiverging(f"request {i} is {g.kind.value} under root {view.root}")
    colours = _chain_height(view, [g.s_plus for g in geo])
    return Coloring(tuple(colours), tuple(subset))


def color_unimodal(view: RootedView, inst: Instance, subset: Sequence[int] | None = None) -> Coloring:
    subset, geo = _geometries(view, inst, subset)
    groups: dict[int, list[int]] = {}
    for pos, (i, g) in enumerate(zip(subset, geo)):
        if g.kind is not Kind.UNIMODAL:
            raise NotUnimodal(f"request {i} is {g.kind.value} under root {view.root}")
        groups.setdefault(g.m, []).append(pos)
    rel = view.related
    colours = [0] * len(subset)
    next_colour = 1
    for mid in sorted(groups):
        members = groups[mid]
        a = [p for p in members if geo[p].m_minus < geo[p].m_plus]
        b = [p for p in members if geo[p].m_minus > geo[p].m_plus]
        free = [
            (p, q) for p in a for q in b
            if rel(geo[p].s, geo[q].t) and rel(geo[q].s, geo[p].t)
        ]
        mate = {}
        for p, q in bipartite_max_matching(a, b, free):
            mate[p], mate[q] = q, p
        for p in members:
            if colours[p]:
                continue
            colours[p] = next_colour
            if p in mate:
                colours[mate[p]] = next_colour
            next_colour += 1
    return Coloring(tuple(colours), tuple(subset))


def split_by_kind(view: RootedView, inst: Instance) -> dict[Kind, list[int]]:
    parts: dict[Kind, list[int]] = {k: [] for k in Kind}
    for i, g in enumerate(classify_all(view, inst.requests)):
        parts[g.kind].append(i)
    return parts


def class_omegas(inst: Instance, root: int) -> tuple[int, int, int]:
    """Clique numbers of the converging, diverging and unimodal parts."""
    view = RootedView(inst.tree, root)
    parts = split_by_kind(view, inst)
    return (
        color_converging(view, inst, parts[Kind.CONVERGING]).num_colours,
        color_diverging(view, inst, parts[Kind.DIVERGING]).num_colours,
        color_unimodal(view, inst, parts[Kind.UNIMODAL]).num_colours,
    )


def color_2approx(inst: Instance, root: int = 0) -> Coloring:
    """Three disjoint colour blocks: converging, then diverging, then unimodal."""
    view = RootedView(inst.tree, root)
    parts = split_by_kind(view, inst)
    colours = [0] * len(inst.requests)
    tags: list[str] = []
    blocks = (
        (color_converging, Kind.CONVERGING, MAINLY_CONVERGING),
        (color_diverging, Kind.DIVERGING, MAINLY_DIVERGING),
        (color_unimodal, Kind.UNIMODAL, UNIMODAL),
    )
    for colourer, kind, tag in blocks:
        sub = colourer(view, inst, parts[kind])
        offset = len(tags)
        for i, c in sub.items():
            colours[i] = offset + c
        tags += [tag] * sub.num_colours
    return Coloring(tuple(colours), tags=tuple(tags))


def _met(path: Sequence[int], emission: list, reception: list) -> set[int]:
    arcs = set(path_arcs(path))
    return {i for i, (e, r) in enumerate(zip(emission, reception)) if e in arcs or r in arcs}


def chi_bound_root(inst: Instance, omega: int | None = None) -> int:
    """A root under which the converging and diverging clique numbers sum to at most omega.

    Requires every request to have length >= 2.
    """
    return chi_bound_root_traced(inst, omega)[0]


def chi_bound_root_traced(inst: Instance, omega: int | None = None) -> tuple[int, str]:
    """Like chi_bound_root, also saying whether the path construction or the fallback scan chose."""
    view0 = RootedView(inst.tree, 0)
    geo = classify_all(view0, inst.requests)
    for i, (s, t) in enumerate(inst.requests):
        if len(view0.path(s, t)) < 3:
            raise NotNicePair(f"request {i} has length 1; subdivide first")
    if not inst.requests:
        return 0, "construction"
    if omega is None:
        omega = len(max_clique(inst))
    emission = [g.emission for g in geo]
    reception = [g.reception for g in geo]
    ends = leaves(inst.tree)

    # Q: leaf-to-leaf directed path meeting the most requests
    best = None
    for a in ends:
        for b in ends:
            if a == b:
                continue
            path = view0.path(a, b)
            count = len(_met(path, emission, reception))
            if best is None or count > best[0]:
                best = (count, path)
    q = best[1]
    q0 = q[0]
    # Q': directed path ending at q0 meeting the most requests
    best_in = None
    for a in ends:
        if a == q0:
            continue
        path = view0.path(a, q0)
        count = len(_met(path, emission, reception))
        if best_in is None or count > best_in[0]:
            best_in = (count, path)
    qp = best_in[1][::-1]  # now starts at q0
    i = 0
    while i + 1 < min(len(q), len(qp)) and q[i + 1] == qp[i + 1]:
        i += 1
    omegas = lambda x: class_omegas(inst, x)[:2]
    chosen = None
    for j in range(i + 1):
        m_plus = len(_met(q[j:], emission, reception) - _met(q[: j + 1], emission, reception))
        far = qp[j:][::-1]  # from the far end of Q' down to q_j
        near = qp[: j + 1][::-1]  # from q_j to q0
        p_minus = len(_met(far, emission, reception) - _met(near, emission, reception))
        if m_plus + p_minus <= omega:
            chosen = q[j]
            break
    if chosen is not None and sum(omegas(chosen)) <= omega:
        return chosen, "construction"
    # The tallies can mislead: a request leaving the Q' branch and entering
    # Q at q_i is counted on both sides, and the chosen q_s does not always
    # satisfy the bound.  Fall back to the first vertex, along Q and then by
    # label, that satisfies it directly.
    for x in list(q) + list(range(inst.tree.n)):
        if sum(omegas(x)) <= omega:
            return x, "fallback"
    raise InternalContradiction(f"no root keeps converging + diverging within omega {omega}")


def color_2omega(inst: Instance) -> Coloring:
    """Colouring with at most twice the clique number of colours."""
    if not inst.requests:
        return Coloring(())
    nice, _ = subdivide_nice(inst)
    root = chi_bound_root(nice)
    # request indices are unchanged by subdivision
    return color_2approx(nice, root)


def greedy_mis_color(inst: Instance) -> Coloring:
    """Repeatedly give a fresh colour to a maximum independent set of what is left."""
    remaining = list(range(len(inst.requests)))
    colours = [0] * len(inst.requests)
    c = 0
    while remaining:
        c += 1
        chosen = max_independent_set(inst.subset(remaining)).members
        for k in chosen:
            colours[remaining[k]] = c
        taken = set(chosen)
        remaining = [v for k, v in enumerate(remaining) if k not in taken]
    return Coloring(tuple(colours))
