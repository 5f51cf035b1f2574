"""Random instance builders shared by the test modules."""
from __future__ import annotations

import random

from hypothesis import strategies as st

from filterless.instance import Instance, Request
from filterless.tree import build_tree


def random_tree_edges(rng: random.Random, n: int) -> list[tuple[int, int]]:
    perm = list(range(n))
    rng.shuffle(perm)
    return [(perm[i], perm[rng.randrange(i)]) for i in range(1, n)]


def random_instance(rng: random.Random, n_max: int = 20, r_max: int = 14, n_min: int = 2, r_min: int = 1) -> Instance:
    n = rng.randint(n_min, n_max)
    tree = build_tree(n, random_tree_edges(rng, n))
    reqs = [Request(*rng.sample(range(n), 2)) for _ in range(rng.randint(r_min, r_max))]
    return Instance(tree, reqs)


def dense_instance(rng: random.Random, n_max: int = 7, r_min: int = 6, r_max: int = 10) -> Instance:
    """Few vertices, many requests: pushes the chromatic number up."""
    return random_instance(rng, n_max=n_max, r_max=r_max, n_min=3, r_min=r_min)


@st.composite
def instances(draw, n_max: int = 12, r_max: int = 10, r_min: int = 1) -> Instance:
    n = draw(st.integers(2, n_max))
    parents = [draw(st.integers(0, i - 1)) for i in range(1, n)]
    tree = build_tree(n, [(i, p) for i, p in zip(range(1, n), parents)])
    pairs = draw(
        st.lists(
            st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1]),
            min_size=r_min,
            max_size=r_max,
        )
    )
    return Instance(tree, [Request(s, t) for s, t in pairs])


def naive_is_ancestor(parent: list[int], x: int, y: int) -> bool:
    while y != -1:
        if y == x:
            return True
        y = parent[y]
    return False
