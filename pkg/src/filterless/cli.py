"""Command-line front end.

Exit codes: 0 success, 1 a "no" answer from ``decide``, 2 any error.
External request and vertex numbers are 1-based.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import oracle
from .clique import max_clique
from .coloring import Coloring, color_2approx, color_2omega, greedy_mis_color, is_proper
from .decision import decide
from .errors import FilterlessError, TooLarge
from .fileformat import parse_instance, serialize_instance
from .generators import generate
from .independence import max_independent_set
from .instance import Instance, reduce_instance
from .interference import build_digraph

FORMAT_ENV = "FILTERLESS_FORMAT"


class ValidationFailed(FilterlessError):
    pass


def _one_based(indices) -> list[int]:
    return [i + 1 for i in indices]


def _load(args) -> Instance:
    if args.input and args.stdin:
        raise FilterlessError("use either --input or --stdin, not both")
    if args.input:
        with open(args.input, encoding="utf-8") as fh:
            return parse_instance(fh.read())
    if args.stdin:
        return parse_instance(sys.stdin.read())
    raise FilterlessError("no instance given; pass --input FILE or --stdin")


def _root(args, inst: Instance) -> int:
    z = args.root - 1
    inst.tree.check_vertex(z)
    return z


def _check_independent(dg, members) -> None:
    ms = set(members)
    for i in members:
        if dg.neighbours(i) & ms:
            raise ValidationFailed(f"witness is not independent at request {i + 1}")


def _check_clique(dg, members) -> None:
    for a in members:
        for b in members:
            if a < b and not dg.adjacent(a, b):
                raise ValidationFailed(f"witness requests {a + 1} and {b + 1} do not interfere")


def _check_colouring(dg, col: Coloring, budget: int | None = None) -> None:
    if not is_proper(dg, col):
        raise ValidationFailed("colouring is not proper")
    if sorted(set(col.colours)) != list(range(1, col.num_colours + 1)):
        raise ValidationFailed("colours are not 1..k without gaps")
    if budget is not None and col.num_colours > budget:
        raise ValidationFailed(f"colouring uses {col.num_colours} > {budget} colours")


def _oracle_agrees(args, inst: Instance, name: str, value: int) -> None:
    """With --validate, compare against the exhaustive oracle when it is small enough."""
    if not args.validate:
        return
    fn = {"alpha": oracle.oracle_alpha, "omega": oracle.oracle_omega, "chi": oracle.oracle_chi}[name]
    try:
        expected, _ = fn(inst)
    except TooLarge:
        return
    ok = value == expected if name != "chi" else value >= expected
    if not ok:
        raise ValidationFailed(f"{name}: computed {value}, oracle says {expected}")


def _colouring_doc(col: Coloring) -> dict:
    doc = {"answer": col.num_colours, "colouring": list(col.colours)}
    if col.tags is not None:
        doc["tags"] = list(col.tags)
    return doc


def cmd_digraph(args, inst):
    dg = build_digraph(inst)
    arcs = sorted(dg.arcs())
    if args.validate and len(inst.requests) <= oracle.OMEGA_LIMIT:
        if set(arcs) != oracle.oracle_arcs(inst):
            raise ValidationFailed("digraph disagrees with the definitional check")
    return {"m": len(inst.requests), "arcs": [[i + 1, j + 1] for i, j in arcs]}, 0


def cmd_alpha(args, inst):
    if not inst.requests:
        return {"answer": 0, "witness": []}, 0
    res = max_independent_set(inst)
    _check_independent(build_digraph(inst), res.members)
    _oracle_agrees(args, inst, "alpha", len(res))
    return {"answer": len(res), "witness": _one_based(res.members), "branch": res.branch}, 0


def cmd_omega(args, inst):
    if not inst.requests:
        return {"answer": 0, "witness": []}, 0
    reduced, _ = reduce_instance(inst)
    res = max_clique(reduced)
    _check_clique(build_digraph(inst), res.members)
    _oracle_agrees(args, inst, "omega", len(res))
    return {"answer": len(res), "witness": _one_based(res.members)}, 0


def cmd_chi_approx(args, inst):
    root = _root(args, inst)
    col = color_2approx(inst, root)
    _check_colouring(build_digraph(inst), col)
    _oracle_agrees(args, inst, "chi", col.num_colours)
    return {"root": root + 1, **_colouring_doc(col)}, 0


def cmd_chi_2omega(args, inst):
    col = color_2omega(inst)
    _check_colouring(build_digraph(inst), col)
    _oracle_agrees(args, inst, "chi", col.num_colours)
    return _colouring_doc(col), 0


def cmd_greedy_mis(args, inst):
    col = greedy_mis_color(inst)
    _check_colouring(build_digraph(inst), col)
    return _colouring_doc(col), 0


def cmd_decide(args, inst):
    col = decide(inst, args.k)
    if args.validate:
        try:
            chi, _ = oracle.oracle_chi(inst)
            if (col is not None) != (chi <= args.k):
                raise ValidationFailed(f"decision disagrees with oracle chi = {chi}")
        except TooLarge:
            pass
    if col is None:
        return {"k": args.k, "answer": "no"}, 1
    _check_colouring(build_digraph(inst), col, args.k)
    return {"k": args.k, "answer": "yes", "colouring": list(col.colours)}, 0


def cmd_reduce(args, inst):
    reduced, mapping = reduce_instance(inst)
    if args.validate and sorted(build_digraph(reduced).arcs()) != sorted(build_digraph(inst).arcs()):
        raise ValidationFailed("reduction changed the interference digraph")
    return {"instance": serialize_instance(reduced), "vertex_map": _one_based(mapping.forward)}, 0


def cmd_gen(args, inst):
    params = {}
    for item in args.param:
        key, sep, value = item.partition("=")
        if not sep:
            raise FilterlessError(f"--param expects key=value, got {item!r}")
        params[key] = value
    made = generate(args.kind, params, args.seed)
    return {"instance": serialize_instance(made)}, 0


def cmd_oracle(args, inst):
    if args.sub == "arcs":
        arcs = sorted(oracle.oracle_arcs(inst))
        return {"m": len(inst.requests), "arcs": [[i + 1, j + 1] for i, j in arcs]}, 0
    fn = {"alpha": oracle.oracle_alpha, "omega": oracle.oracle_omega, "chi": oracle.oracle_chi}[args.sub]
    value, witness = fn(inst)
    if args.sub == "chi":
        return {"answer": value, "colouring": list(witness)}, 0
    return {"answer": value, "witness": _one_based(witness)}, 0


COMMANDS = {
    "digraph": cmd_digraph,
    "alpha": cmd_alpha,
    "omega": cmd_omega,
    "chi-approx": cmd_chi_approx,
    "chi-2omega": cmd_chi_2omega,
    "greedy-mis": cmd_greedy_mis,
    "decide": cmd_decide,
    "reduce": cmd_reduce,
    "gen": cmd_gen,
    "oracle": cmd_oracle,
}


def render_text(command: str, doc: dict) -> str:
    if "instance" in doc:
        return doc["instance"]
    if "arcs" in doc:
        lines = [f"d {doc['m']} {len(doc['arcs'])}"]
        lines += [f"a {i} {j}" for i, j in doc["arcs"]]
        if "seconds" in doc:
            lines.append(f"c seconds {doc['seconds']:.6f}")
        return "\n".join(lines) + "\n"
    lines = [f"command {command}"]
    for key, value in doc.items():
        if isinstance(value, list):
            value = " ".join(str(v) for v in value)
        elif isinstance(value, float):
            value = f"{value:.6f}"
        lines.append(f"{key} {value}".rstrip())
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", metavar="FILE", help="instance file")
    common.add_argument("--stdin", action="store_true", help="read the instance from standard input")
    common.add_argument("--root", type=int, default=1, help="root vertex, 1-based (default 1)")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument(
        "--format", choices=("text", "json"), default=os.environ.get(FORMAT_ENV, "text"),
        help=f"output format (default from ${FORMAT_ENV}, else text)",
    )
    common.add_argument("--out", metavar="FILE", help="write the result here instead of stdout")
    common.add_argument("--validate", action="store_true", help="replay oracle checks when small enough")
    common.add_argument("--timing", action="store_true", help="include wall-clock seconds")

    parser = argparse.ArgumentParser(
        prog="filterless", description="Interference quantities for requests on bidirected trees."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "decide":
            p.add_argument("--k", type=int, required=True, help="colour budget")
        elif name == "gen":
            p.add_argument("kind", choices=("star_kmn", "c5kt", "fig1", "random"))
            p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")
        elif name == "oracle":
            p.add_argument("sub", choices=("arcs", "alpha", "omega", "chi"))
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        start = time.perf_counter()
        inst = None if args.command == "gen" else _load(args)
        doc, code = COMMANDS[args.command](args, inst)
        if args.timing:
            doc["seconds"] = time.perf_counter() - start
        if args.format == "json":
            text = json.dumps({"command": args.command, **doc}, indent=2) + "\n"
        else:
            text = render_text(args.command, doc)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return code
    except (FilterlessError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
