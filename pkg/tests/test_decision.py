import random

import pytest

from filterless.coloring import is_proper
from filterless.decision import (
    _dominates, decide, decide_3col, decide_kcol, dominating_or_comparability, two_list_color,
)
from filterless.errors import BudgetTooSmall, ReductionRequired
from filterless.generators import c5kt, fig1, star_kmn
from filterless.instance import Instance, Kind, Request, classify_all, reduce_instance
from filterless.interference import InterferenceDigraph, build_digraph
from filterless.oracle import oracle_chi, oracle_list_color
from filterless.tree import RootedView, build_tree

from helpers import dense_instance, random_instance


def test_star_has_small_dominating_set():
    inst = star_kmn(2, 3)
    res = dominating_or_comparability(inst)
    assert res.dominating is not None and len(res.dominating) <= 3
    assert _dominates(build_digraph(inst), res.dominating)


def test_all_converging_gives_witness():
    tree = build_tree(4, [(0, 1), (1, 2), (1, 3)])
    inst = Instance(tree, [Request(2, 0), Request(3, 0), Request(3, 1), Request(2, 1)])
    res = dominating_or_comparability(inst)
    if res.dominating is None:
        v = RootedView(tree, res.root)
        wanted = Kind.DIVERGING if res.converse else Kind.CONVERGING
        assert all(g.kind is wanted for g in classify_all(v, inst.requests))
    else:
        assert _dominates(build_digraph(inst), res.dominating)


def test_unreduced_rejected():
    tree = build_tree(4, [(0, 1), (1, 2), (2, 3)])
    with pytest.raises(ReductionRequired):
        dominating_or_comparability(Instance(tree, [Request(1, 2)]))


@pytest.mark.parametrize("seed", range(150))
def test_dominating_or_witness_is_valid(seed):
    rng = random.Random(seed)
    inst, _ = reduce_instance(random_instance(rng, n_max=20, r_max=14))
    res = dominating_or_comparability(inst)
    if res.dominating is not None:
        assert len(res.dominating) <= 3
        assert _dominates(build_digraph(inst), res.dominating)
    else:
        wanted = Kind.DIVERGING if res.converse else Kind.CONVERGING
        v = RootedView(inst.tree, res.root)
        assert all(g.kind is wanted for g in classify_all(v, inst.requests))


def test_two_lists_without_edges():
    dg = InterferenceDigraph.from_arcs(3, [])
    assert two_list_color(dg, [[1, 2]] * 3) == [1, 1, 1]


def test_two_lists_conflict():
    dg = InterferenceDigraph.from_arcs(2, [(0, 1)])
    assert two_list_color(dg, [[1], [1]]) is None
    assert two_list_color(dg, [[1], []]) is None


@pytest.mark.parametrize("seed", range(150))
def test_two_lists_against_exhaustive(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 14)
    arcs = [(i, j) for i in range(n) for j in range(n) if i != j and rng.random() < 0.15]
    dg = InterferenceDigraph.from_arcs(n, arcs)
    lists = [rng.sample([1, 2, 3], rng.choice((1, 2, 2))) for _ in range(n)]
    got = two_list_color(dg, lists)
    assert (got is None) == (oracle_list_color(dg.edges(), lists) is None)
    if got is not None:
        assert all(got[u] != got[v] for u, v in dg.edges())
        assert all(c in l for c, l in zip(got, lists))


def test_three_colouring_of_cycle():
    col = decide_3col(c5kt(1))
    assert col is not None and col.num_colours == 3
    assert is_proper(build_digraph(c5kt(1)), col)
    assert decide_3col(c5kt(2)) is None


@pytest.mark.parametrize("seed", range(120))
def test_three_colouring_matches_oracle(seed):
    rng = random.Random(seed)
    inst = random_instance(rng, n_max=10, r_max=12) if seed % 2 else dense_instance(rng)
    chi = oracle_chi(inst)[0]
    col = decide_3col(inst)
    assert (col is not None) == (chi <= 3)
    if col is not None:
        assert is_proper(build_digraph(inst), col) and col.num_colours <= 3


def test_budget_too_small():
    with pytest.raises(BudgetTooSmall):
        decide_kcol(fig1(), 3)


def test_kcol_examples():
    col = decide_kcol(fig1(), 4)
    assert col is not None and col.num_colours <= 4
    assert is_proper(build_digraph(fig1()), col)
    assert decide_kcol(c5kt(2), 4) is None
    assert decide_kcol(c5kt(2), 5) is not None


def _colour_class_shapes_ok(inst, col):
    kinds = [g.kind for g in classify_all(RootedView(inst.tree, 0), inst.requests)]
    for cls in col.classes():
        uni = sum(kinds[i] is Kind.UNIMODAL for i in cls)
        not_conv = sum(kinds[i] is not Kind.CONVERGING for i in cls)
        not_div = sum(kinds[i] is not Kind.DIVERGING for i in cls)
        if not (uni == 2 == len(cls) or not_conv <= 1 or not_div <= 1):
            return False
    return True


@pytest.mark.parametrize("seed", range(80))
def test_kcol_matches_oracle(seed):
    rng = random.Random(seed)
    inst = dense_instance(rng)
    chi = oracle_chi(inst)[0]
    dg = build_digraph(inst)
    for k in (4, 5, 6):
        col = decide_kcol(inst, k)
        assert (col is not None) == (chi <= k)
        if col is None:
            continue
        assert is_proper(dg, col) and col.num_colours <= k
        choice = col.detail
        for group in (choice.q_minus, choice.q_plus):
            assert all(dg.adjacent(a, b) for a in group for b in group if a < b)
        for a, b in choice.matching:
            assert not dg.adjacent(a, b)
        assert _colour_class_shapes_ok(inst, col)


def test_decide_small_budgets():
    empty = Instance(build_tree(2, [(0, 1)]), [])
    assert decide(empty, 0).num_colours == 0
    assert decide(fig1(), 0) is None
    assert decide(fig1(), 1) is None
    two = decide(fig1(), 2)
    assert two is not None and two.num_colours == 2
    assert is_proper(build_digraph(fig1()), two)
    indep = Instance(build_tree(3, [(0, 1), (0, 2)]), [Request(1, 0), Request(2, 0)])
    assert decide(indep, 1).colours == (1, 1)
    assert decide(c5kt(1), 2) is None


@pytest.mark.parametrize("seed", range(40))
def test_decide_dispatch_matches_oracle(seed):
    rng = random.Random(seed)
    inst = random_instance(rng, n_max=9, r_max=9)
    chi = oracle_chi(inst)[0]
    for k in range(0, 6):
        assert (decide(inst, k) is not None) == (chi <= k)
