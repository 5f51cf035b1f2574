import random

import pytest
from hypothesis import given, settings

from filterless.coloring import (
    MAINLY_CONVERGING, MAINLY_DIVERGING, Coloring, chi_bound_root, chi_bound_root_traced,
    class_omegas, color_2approx, color_2omega, color_converging, color_diverging, color_unimodal,
    greedy_mis_color, is_proper, split_by_kind,
)
from filterless.errors import NotConverging, NotDiverging, NotNicePair, NotUnimodal
from filterless.generators import c5kt, fig1
from filterless.instance import Instance, Kind, Request, subdivide_nice
from filterless.interference import build_digraph
from filterless.oracle import oracle_chi, oracle_omega
from filterless.tree import RootedView, build_tree

from helpers import instances, random_instance

STAR = build_tree(4, [(0, 1), (0, 2), (0, 3)])


def _gap_free(col):
    return sorted(set(col.colours)) == list(range(1, col.num_colours + 1))


def test_unrelated_converging_share_colour():
    inst = Instance(STAR, [Request(1, 0), Request(2, 0), Request(3, 0)])
    col = color_converging(RootedView(STAR, 0), inst)
    assert col.colours == (1, 1, 1)


def test_duplicates_get_distinct_colours():
    inst = Instance(STAR, [Request(1, 2)] * 4)
    v = RootedView(STAR, 1)  # diverging from the root
    assert color_diverging(v, inst).colours == (1, 2, 3, 4)
    v = RootedView(STAR, 2)  # converging into the root
    assert color_converging(v, inst).colours == (1, 2, 3, 4)


def test_wrong_class_rejected():
    inst = Instance(STAR, [Request(0, 1)])
    v = RootedView(STAR, 0)
    with pytest.raises(NotConverging):
        color_converging(v, inst)
    with pytest.raises(NotUnimodal):
        color_unimodal(v, inst)
    with pytest.raises(NotDiverging):
        color_diverging(v, Instance(STAR, [Request(1, 0)]))


def test_unimodal_pair_shares_colour():
    inst = Instance(STAR, [Request(1, 2), Request(2, 1)])
    col = color_unimodal(RootedView(STAR, 0), inst)
    assert col.colours == (1, 1)


def test_unimodal_clique_gets_all_colours():
    inst = Instance(STAR, [Request(1, 2), Request(1, 2), Request(1, 3), Request(3, 1)])
    col = color_unimodal(RootedView(STAR, 0), inst)
    assert col.num_colours == oracle_omega(inst)[0]
    assert is_proper(build_digraph(inst), col)


@pytest.mark.parametrize("seed", range(60))
def test_class_colourers_use_clique_number(seed):
    rng = random.Random(seed)
    inst = random_instance(rng, n_max=10, r_max=12, r_min=4)
    v = RootedView(inst.tree, rng.randrange(inst.tree.n))
    parts = split_by_kind(v, inst)
    dg = build_digraph(inst)
    for kind, colourer in (
        (Kind.CONVERGING, color_converging),
        (Kind.DIVERGING, color_diverging),
        (Kind.UNIMODAL, color_unimodal),
    ):
        idx = parts[kind]
        if not idx:
            continue
        col = colourer(v, inst, idx)
        assert col.num_colours == oracle_omega(inst.subset(idx))[0]
        assert is_proper(dg, col) and _gap_free(col)


def test_example_two_approx():
    col = color_2approx(fig1(), 0)
    assert col.num_colours == 3
    assert col.tags == (MAINLY_CONVERGING, MAINLY_DIVERGING, MAINLY_DIVERGING)
    assert oracle_chi(fig1())[0] == 2


def test_all_converging_is_exact():
    inst = Instance(STAR, [Request(1, 0), Request(1, 0), Request(2, 0)])
    assert color_2approx(inst, 0).num_colours == oracle_chi(inst)[0] == 2


@settings(max_examples=80, deadline=None)
@given(instances(n_max=10, r_max=11))
def test_two_approx_bounds(inst):
    for root in (0, inst.tree.n - 1):
        col = color_2approx(inst, root)
        assert is_proper(build_digraph(inst), col) and _gap_free(col)
        assert col.num_colours == sum(class_omegas(inst, root))
        assert col.num_colours <= 2 * oracle_chi(inst)[0]


def test_root_bound_requires_long_requests():
    with pytest.raises(NotNicePair):
        chi_bound_root(Instance(build_tree(2, [(0, 1)]), [Request(0, 1)]))


def test_root_bound_single_request():
    nice, _ = subdivide_nice(Instance(build_tree(2, [(0, 1)]), [Request(0, 1)]))
    x = chi_bound_root(nice)
    assert sum(class_omegas(nice, x)[:2]) <= 1


def test_root_bound_on_example():
    nice, _ = subdivide_nice(fig1())
    x = chi_bound_root(nice)
    assert sum(class_omegas(nice, x)[:2]) <= 2


@pytest.mark.parametrize("seed", range(60))
def test_root_bound_holds(seed):
    nice, _ = subdivide_nice(random_instance(random.Random(seed), n_max=10, r_max=12))
    omega = oracle_omega(nice)[0]
    x, how = chi_bound_root_traced(nice)
    assert how in ("construction", "fallback")
    assert sum(class_omegas(nice, x)[:2]) <= omega


def test_two_omega_on_blown_up_cycle():
    col = color_2omega(c5kt(2))
    assert col.num_colours <= 8
    assert is_proper(build_digraph(c5kt(2)), col)


def test_two_omega_on_clique():
    inst = Instance(build_tree(2, [(0, 1)]), [Request(0, 1)] * 3)
    assert color_2omega(inst).num_colours == 3


@settings(max_examples=60, deadline=None)
@given(instances(n_max=10, r_max=11))
def test_two_omega_bound(inst):
    col = color_2omega(inst)
    assert is_proper(build_digraph(inst), col) and _gap_free(col)
    assert col.num_colours <= 2 * oracle_omega(inst)[0]


def test_greedy_on_example():
    col = greedy_mis_color(fig1())
    assert col.num_colours == 3
    assert col.classes() == [[2, 3, 4, 5], [0], [1]]


def test_greedy_empty():
    assert greedy_mis_color(Instance(STAR, [])).num_colours == 0


@settings(max_examples=60, deadline=None)
@given(instances(n_max=10, r_max=11))
def test_greedy_proper(inst):
    col = greedy_mis_color(inst)
    assert is_proper(build_digraph(inst), col)
    assert col.num_colours >= oracle_chi(inst)[0]


def test_coloring_accessors():
    col = Coloring((2, 1), indices=(5, 3))
    assert col.as_dict() == {5: 2, 3: 1}
    assert col.classes() == [[3], [5]]
