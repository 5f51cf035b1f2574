"""Named and random instance generators."""
from __future__ import annotations

import heapq
import random

from .errors import BadParams
from .instance import Instance, Request
from .tree import build_tree

# vertex labels of the 3/2-ratio example: x, y, z0, z1, t0..t3
FIG1_LABELS = ("x", "y", "z0", "z1", "t0", "t1", "t2", "t3")
FIG1_REQUEST_NAMES = ("a1", "a2", "b1", "b2", "b3", "b4")


def star_kmn(m: int, n: int) -> Instance:
    """Star with m converging leaf-to-centre and n diverging centre-to-leaf requests.

    Its interference graph is K_{m,n}.
    """
    if m < 1 or n < 1:
        raise BadParams(f"star_kmn needs m, n >= 1, got {m}, {n}")
    tree = build_tree(m + n + 1, [(0, v) for v in range(1, m + n + 1)])
    reqs = [Request(v, 0) for v in range(1, m + 1)]
    reqs += [Request(0, v) for v in range(m + 1, m + n + 1)]
    return Instance(tree, reqs)


def c5kt(t: int) -> Instance:
    """Four-vertex tree whose interference graph is C5 blown up by K_t.

    Vertices a=0, b=1, c=2, d=3; requests come in five groups of t copies:
    (a,b), (b,c), (d,b), (b,a), (c,d).
    """
    if t < 1:
        raise BadParams(f"c5kt needs t >= 1, got {t}")
    a, b, c, d = range(4)
    tree = build_tree(4, [(a, b), (b, c), (b, d)])
    groups = [(a, b), (b, c), (d, b), (b, a), (c, d)]
    return Instance(tree, [Request(*g) for g in groups for _ in range(t)])


def fig1() -> Instance:
    """The eight-vertex example where greedy independent sets need 3 colours but 2 suffice."""
    x, y, z0, z1, t0, t1, t2, t3 = range(8)
    tree = build_tree(8, [(x, y), (y, z0), (y, z1), (z0, t0), (z0, t1), (z1, t2), (z1, t3)])
    reqs = [
        Request(x, z0), Request(x, z1),
        Request(t0, z0), Request(t1, z0), Request(t2, z1), Request(t3, z1),
    ]
    return Instance(tree, reqs)


def random_instance(n: int, m: int, seed: int | None = None) -> Instance:
    """Uniform labelled tree (Pruefer decoding) with m uniform distinct-endpoint requests."""
    if n < 2 or m < 1:
        raise BadParams(f"random needs n >= 2 and m >= 1, got n={n}, m={m}")
    rng = random.Random(seed)
    tree = build_tree(n, _pruefer_edges([rng.randrange(n) for _ in range(n - 2)], n))
    reqs = [Request(*rng.sample(range(n), 2)) for _ in range(m)]
    return Instance(tree, reqs)


def _pruefer_edges(seq: list[int], n: int) -> list[tuple[int, int]]:
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    heap = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(heap)
    edges = []
    for v in seq:
        leaf = heapq.heappop(heap)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(heap, v)
    edges.append((heapq.heappop(heap), heapq.heappop(heap)))
    return edges


GENERATORS = {
    "star_kmn": lambda p, seed: star_kmn(int(p["m"]), int(p["n"])),
    "c5kt": lambda p, seed: c5kt(int(p["t"])),
    "fig1": lambda p, seed: fig1(),
    "random": lambda p, seed: random_instance(int(p["n"]), int(p["m"]), seed),
}


def generate(kind: str, params: dict | None = None, seed: int | None = None) -> Instance:
    params = params or {}
    if kind not in GENERATORS:
        raise BadParams(f"unknown generator {kind!r}; choose from {sorted(GENERATORS)}")
    try:
        return GENERATORS[kind](params, seed)
    except KeyError as missing:
        raise BadParams(f"{kind} needs parameter {missing}") from None
    except ValueError as exc:
        if isinstance(exc, BadParams):
            raise
        raise BadParams(f"{kind}: {exc}") from None
