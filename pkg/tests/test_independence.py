import random

import pytest
from hypothesis import given, settings

from filterless.errors import EmptyInstance
from filterless.generators import c5kt, fig1
from filterless.independence import find_independent_pair, max_independent_set
from filterless.instance import Instance, Kind, Request, classify_all
from filterless.interference import build_digraph
from filterless.oracle import oracle_alpha, oracle_graph
from filterless.rangequery import Fenwick, points_in_boxes, stabbing_sweep
from filterless.tree import RootedView, build_tree

from helpers import instances, random_instance


def _independent(inst, members):
    dg = build_digraph(inst)
    return all(not dg.adjacent(a, b) for a in members for b in members if a < b)


def test_example_alpha_is_four():
    res = max_independent_set(fig1())
    assert len(res) == 4 and res.members == (2, 3, 4, 5)


def test_single_request():
    inst = Instance(build_tree(2, [(0, 1)]), [Request(1, 0)])
    assert max_independent_set(inst).members == (0,)


def test_empty_rejected():
    with pytest.raises(EmptyInstance):
        max_independent_set(Instance(build_tree(2, [(0, 1)]), []))


def test_pair_on_star():
    tree = build_tree(3, [(0, 1), (0, 2)])
    assert find_independent_pair(Instance(tree, [Request(1, 0), Request(2, 0)])) == (0, 1)


def test_pair_in_five_cycle():
    pair = find_independent_pair(c5kt(1))
    assert pair is not None
    assert not build_digraph(c5kt(1)).adjacent(*pair)


def test_no_pair_in_clique():
    tree = build_tree(2, [(0, 1)])
    assert find_independent_pair(Instance(tree, [Request(0, 1)] * 4)) is None


@settings(max_examples=150, deadline=None)
@given(instances(n_max=14, r_max=12))
def test_alpha_matches_oracle(inst):
    res = max_independent_set(inst)
    assert len(res) == oracle_alpha(inst)[0]
    assert _independent(inst, res.members)


@pytest.mark.parametrize("seed", range(200))
def test_pair_search_matches_oracle(seed):
    rng = random.Random(seed)
    # small trees with many requests make independent pairs rare
    inst = random_instance(rng, n_max=rng.choice((4, 6, 10)), r_max=8, r_min=2)
    root = rng.randrange(inst.tree.n)
    pair = find_independent_pair(inst, root)
    assert (pair is not None) == (oracle_alpha(inst)[0] >= 2)
    if pair:
        assert _independent(inst, pair)


@pytest.mark.parametrize("seed", range(40))
def test_swap_toward_descendant_keeps_independence(seed):
    rng = random.Random(seed)
    inst = random_instance(rng, n_max=16, r_max=14)
    v = RootedView(inst.tree, rng.randrange(inst.tree.n))
    geo = classify_all(v, inst.requests)
    masks = oracle_graph(inst)
    div = [i for i, g in enumerate(geo) if g.kind is Kind.DIVERGING]
    indep = lambda s: all(not masks[a] >> b & 1 for a in s for b in s if a < b)
    for _ in range(10):
        chosen = [i for i in div if rng.random() < 0.5]
        if not chosen or not indep(chosen):
            continue
        r = rng.choice(chosen)
        for r2 in div:
            if r2 not in chosen and v.is_ancestor(geo[r].s_plus, geo[r2].s_plus):
                assert indep([x for x in chosen if x != r] + [r2])


@pytest.mark.parametrize("seed", range(40))
def test_extension_rule(seed):
    rng = random.Random(seed)
    inst = random_instance(rng, n_max=16, r_max=14)
    v = RootedView(inst.tree, rng.randrange(inst.tree.n))
    geo = classify_all(v, inst.requests)
    masks = oracle_graph(inst)
    div = [i for i, g in enumerate(geo) if g.kind is Kind.DIVERGING]
    others = [i for i, g in enumerate(geo) if g.kind is not Kind.DIVERGING]
    for _ in range(10):
        chosen = [i for i in div if rng.random() < 0.5]
        if len(chosen) < 2 or any(masks[a] >> b & 1 for a in chosen for b in chosen):
            continue
        x0 = geo[chosen[0]].t
        for q in chosen[1:]:
            x0 = v.lca(x0, geo[q].t)
        for r in others:
            free = not any(masks[r] >> q & 1 for q in chosen)
            assert free == v.is_ancestor(geo[r].s, x0)


def test_fenwick():
    f = Fenwick(5)
    for i, d in enumerate([3, 1, 4, 1, 5]):
        f.add(i, d)
    assert f.prefix(5) == 14 and f.range(1, 3) == 5 and f.range(3, 3) == 0


def test_points_in_boxes_excludes_own_point():
    pts = [(1, 1, 0), (5, 5, 1)]
    assert points_in_boxes(pts, [(0, 2, 0, 2, 0)]) is None
    assert points_in_boxes(pts, [(0, 9, 0, 9, 0)]) == (0, 1)


@pytest.mark.parametrize("seed", range(20))
def test_range_primitives_against_scan(seed):
    rng = random.Random(seed)
    pts = [(rng.randint(0, 20), rng.randint(0, 20), i) for i in range(15)]
    boxes = []
    for q in range(10):
        x1, y1 = rng.randint(0, 20), rng.randint(0, 20)
        boxes.append((x1, x1 + rng.randint(0, 8), y1, y1 + rng.randint(0, 8), q))
    hits = [
        (q, min(i for x, y, i in pts if i != q and x1 <= x <= x2 and y1 <= y <= y2))
        for x1, x2, y1, y2, q in boxes
        if any(i != q and x1 <= x <= x2 and y1 <= y <= y2 for x, y, i in pts)
    ]
    assert points_in_boxes(pts, boxes) == (min(hits) if hits else None)

    ivs = []
    for i in range(12):
        lo = rng.randint(0, 20)
        ivs.append((lo, lo + rng.randint(0, 6), rng.randint(0, 20), i))
    queries = [(rng.randint(0, 25), a, a + rng.randint(0, 5), q) for q, a in
               enumerate(rng.randint(0, 20) for _ in range(10))]
    found = stabbing_sweep(ivs, queries)
    any_hit = [
        q for pos, klo, khi, q in queries
        if any(i != q and lo <= pos <= hi and klo <= key <= khi for lo, hi, key, i in ivs)
    ]
    assert (found is not None) == bool(any_hit)
    if found:
        q, w = found
        pos, klo, khi, _ = next(x for x in queries if x[3] == q)
        lo, hi, key, _ = next(x for x in ivs if x[3] == w)
        assert w != q and lo <= pos <= hi and klo <= key <= khi
