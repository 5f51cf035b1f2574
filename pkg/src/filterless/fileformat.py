"""Line-oriented instance files.

::

    c optional comments
    p tree <n> <m>
    e <u> <v>        (n - 1 lines, 1-based)
    r <s> <t>        (m lines, 1-based; order gives request numbers)
"""
from __future__ import annotations

from .errors import CountMismatch, InvalidVertex, ParseError, TreeError, ZeroLengthRequest
from .instance import Instance, Request
from .tree import build_tree


def parse_instance(text: str) -> Instance:
    n = m = None
    edges: list[tuple[int, int]] = []
    reqs: list[Request] = []
    stage = "header"
    last_line = 0

    def ints(fields: list[str], count: int, lineno: int) -> list[int]:
        if len(fields) != count:
            raise ParseError(f"expected {count} integers, got {len(fields)}", lineno)
        try:
            return [int(f) for f in fields]
        except ValueError:
            raise ParseError(f"not an integer in {' '.join(fields)!r}", lineno) from None

    def vertex(v: int, lineno: int) -> int:
        if not 1 <= v <= n:
            raise InvalidVertex(f"vertex {v} outside 1..{n}", lineno)
        return v - 1

    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tag, *fields = line.split()
        if tag == "p":
            if stage != "header":
                raise ParseError("duplicate header", lineno)
            if not fields or fields[0] != "tree":
                raise ParseError("header must read 'p tree <n> <m>'", lineno)
            n, m = ints(fields[1:], 2, lineno)
            if n < 1 or m < 0:
                raise ParseError(f"bad sizes n={n}, m={m}", lineno)
            stage = "edges"
        elif tag == "e":
            if stage != "edges":
                raise ParseError("edge line outside the edge section", lineno)
            u, v = ints(fields, 2, lineno)
            edges.append((vertex(u, lineno), vertex(v, lineno)))
            if len(edges) > n - 1:
                raise CountMismatch(f"more than {n - 1} edges", lineno)
        elif tag == "r":
            if stage == "header":
                raise ParseError("request before header", lineno)
            if stage == "edges" and len(edges) != n - 1:
                raise CountMismatch(f"expected {n - 1} edges, got {len(edges)}", lineno)
            stage = "requests"
            s, t = ints(fields, 2, lineno)
            s, t = vertex(s, lineno), vertex(t, lineno)
            if s == t:
                raise ZeroLengthRequest(f"request from {s + 1} to itself", lineno)
            reqs.append(Request(s, t))
            if len(reqs) > m:
                raise CountMismatch(f"more than {m} requests", lineno)
        else:
            raise ParseError(f"unknown line type {tag!r}", lineno)

    if n is None:
        raise ParseError("missing 'p tree' header", last_line or None)
    if len(edges) != n - 1:
        raise CountMismatch(f"expected {n - 1} edges, got {len(edges)}", last_line)
    if len(reqs) != m:
        raise CountMismatch(f"expected {m} requests, got {len(reqs)}", last_line)
    try:
        tree = build_tree(n, edges)
    except TreeError as exc:
        raise ParseError(str(exc)) from exc
    return Instance(tree, reqs)


def serialize_instance(inst: Instance, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines += [f"c {row}" for row in comment.splitlines()]
    lines.append(f"p tree {inst.tree.n} {len(inst.requests)}")
    lines += [f"e {u + 1} {v + 1}" for u, v in inst.tree.edges()]
    lines += [f"r {s + 1} {t + 1}" for s, t in inst.requests]
    return "\n".join(lines) + "\n"
