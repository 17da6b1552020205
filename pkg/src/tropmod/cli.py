"""``tropmod`` command line.

Exit status is 0 on success, 1 for a negative verdict (``iso`` false,
``--check-codim1`` false) and 2 for unreadable or invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from .canonical import automorphism_group, canonical_key, is_isomorphic
from .contraction import contract, resolve_to_trivalent
from .dot import graph_to_dot, poset_to_dot
from .dual import curve_from_json as nodal_from_json
from .dual import dual_graph, stabilize_curve, stratum_dims
from .enumeration import codim1_connected, enumerate_all, f_vector, ht_path, shape_vector
from .errors import ParseError, TropmodError
from .graph import WeightedGraph, check_stable, genus, to_json, validate
from .metric import (
    cone_point_from_json,
    curve_from_json,
    curve_to_json,
    fiber,
    format_length,
    stabilize,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT = 0, 1, 2


def _load(path: str) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc.msg}", line=exc.lineno) from None


def _load_graph(path: str) -> WeightedGraph:
    return validate(_load(path))


def _dump(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def _emit(G: WeightedGraph, fmt: str, extra: dict[str, Any] | None = None) -> str:
    if fmt == "dot":
        return graph_to_dot(G).rstrip("\n")
    if fmt == "text":
        return _graph_text(G)
    out = {"graph": to_json(G)} if extra else to_json(G)
    if extra:
        out.update(extra)
    return _dump(out)


def _graph_text(G: WeightedGraph) -> str:
    lines = [f"genus {genus(G)}, {G.num_legs} legs, {G.num_vertices} vertices, {G.num_edges} edges"]
    for v, w in G.vertices:
        legs = ",".join(str(i) for i in G.legs_at(v))
        lines.append(f"  {v}: w={w}" + (f" legs {legs}" if legs else ""))
    for e, a, b in G.edges:
        lines.append(f"  {e}: {a} -- {b}")
    return "\n".join(lines)


# -- subcommands -------------------------------------------------------------------


def cmd_validate(args: argparse.Namespace) -> int:
    G = _load_graph(args.graph)
    if args.format != "json":
        print(_emit(G, args.format))
        return EXIT_OK
    report = check_stable(G)
    print(_dump({
        "genus": genus(G),
        "legs": G.num_legs,
        "vertices": G.num_vertices,
        "edges": G.num_edges,
        "stable": report.stable,
        "offending": [{"vertex": v, "weight": w, "valence": k} for v, w, k in report.offending],
        "key": canonical_key(G).decode(),
    }))
    return EXIT_OK


def cmd_iso(args: argparse.Namespace) -> int:
    same = is_isomorphic(_load_graph(args.a), _load_graph(args.b))
    print("isomorphic" if same else "not isomorphic")
    return EXIT_OK if same else EXIT_NEGATIVE


def cmd_aut(args: argparse.Namespace) -> int:
    A = automorphism_group(_load_graph(args.graph))
    print(_dump({
        "order": A.order,
        "edge_action_order": A.edge_action_order,
        "generators": [str(p) for p in A.generators],
        "edge_action_generators": [str(p) for p in A.edge_action_generators],
    }))
    return EXIT_OK


def cmd_contract(args: argparse.Namespace) -> int:
    G = _load_graph(args.graph)
    edges = [e for e in (args.edges or "").split(",") if e]
    res = contract(G, edges)
    extra = {
        "vertex_map": res.vertex_map,
        "edge_embedding": res.edge_embedding,
        "leg_map": {str(i): j for i, j in res.leg_map.items()},
    }
    print(_emit(res.graph, args.format, extra if args.format == "json" else None))
    return EXIT_OK


def cmd_resolve(args: argparse.Namespace) -> int:
    G0, S = resolve_to_trivalent(_load_graph(args.graph))
    print(_emit(G0, args.format, {"contracted": sorted(S)} if args.format == "json" else None))
    return EXIT_OK


def cmd_stabilize(args: argparse.Namespace) -> int:
    raw = _load(args.curve)
    if isinstance(raw, dict) and "components" in raw:
        # a nodal curve description: stabilize algebraically
        print(_emit(stabilize_curve(nodal_from_json(raw)), "json"))
        return EXIT_OK
    C = curve_from_json(raw, extended=True if args.extended else None)
    print(_dump(curve_to_json(stabilize(C))))
    return EXIT_OK


def cmd_fiber(args: argparse.Namespace) -> int:
    p = cone_point_from_json(_load(args.point))
    points = sorted(fiber(p), key=lambda q: tuple(x for _, x in q.coords))
    print(_dump({
        "edges": list(p.base.edge_ids),
        "points": [{e: format_length(x) for e, x in q.coords} for q in points],
        "size": len(points),
    }))
    return EXIT_OK


def cmd_dual(args: argparse.Namespace) -> int:
    print(_emit(dual_graph(nodal_from_json(_load(args.curve))), args.format))
    return EXIT_OK


def cmd_dims(args: argparse.Namespace) -> int:
    d = stratum_dims(_load_graph(args.graph))
    print(_dump({"dim_alg": d.dim_alg, "codim_trop": d.codim_trop, "dim_trop": d.dim_trop}))
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    P = enumerate_all(args.g, args.n, seed=args.seed)
    status = EXIT_OK
    if args.fvector:
        print(json.dumps(f_vector(P), separators=(",", ":")))
    if args.check_codim1:
        ok = codim1_connected(P)
        print("true" if ok else "false")
        status = status if ok else EXIT_NEGATIVE
    if args.ht_path:
        A, B = (_load_graph(p) for p in args.ht_path)
        steps = ht_path(A, B, P)
        print(_dump([
            {"direction": s.direction, "upper": to_json(s.upper), "edge": s.edge, "lower": to_json(s.lower)}
            for s in steps
        ]))
    if args.fvector or args.check_codim1 or args.ht_path:
        return status
    if args.format == "dot":
        print(poset_to_dot(P), end="")
    elif args.format == "text":
        print(f"g={P.g} n={P.n} types={len(P.nodes)} f-vector={f_vector(P)}")
        for i, node in enumerate(P.nodes):
            weights = ",".join(str(w) for _, w in node.graph.vertices)
            below = [f"n{c.lower}" + (f"x{c.multiplicity}" if c.multiplicity > 1 else "") for c in P.covers_of(i)]
            print(f"n{i}: |E|={node.num_edges} w=({weights})" + (f" -> {' '.join(below)}" if below else ""))
    else:
        print(_dump({
            "g": P.g,
            "n": P.n,
            "f_vector": f_vector(P),
            "shape_vector": shape_vector(P),
            "nodes": [{"index": i, "edges": nd.num_edges, "graph": to_json(nd.graph)} for i, nd in enumerate(P.nodes)],
            "covers": [
                {"from": c.upper, "to": c.lower, "multiplicity": c.multiplicity, "edges": list(c.edges)}
                for c in P.cover_edges
            ],
        }))
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tropmod", description="Stable weighted graphs and tropical moduli strata.")
    sub = parser.add_subparsers(dest="command", required=True)
    formats = ("json", "dot", "text")

    p = sub.add_parser("validate", help="check a graph file and print its invariants")
    p.add_argument("graph")
    p.add_argument("--format", choices=formats, default="json")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("iso", help="exit 0 iff the two graphs are isomorphic")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("aut", help="automorphism group order and generators")
    p.add_argument("graph")
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("contract", help="weighted contraction of a set of edges")
    p.add_argument("graph")
    p.add_argument("--edges", default="", help="comma-separated edge ids")
    p.add_argument("--format", choices=formats, default="json")
    p.set_defaults(func=cmd_contract)

    p = sub.add_parser("resolve", help="3-regular weight-zero graph contracting onto the input")
    p.add_argument("graph")
    p.add_argument("--format", choices=formats, default="json")
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("stabilize", help="stable model of a tropical curve or nodal curve")
    p.add_argument("curve")
    p.add_argument("--extended", action="store_true", help="allow infinite length on any edge")
    p.set_defaults(func=cmd_stabilize)

    p = sub.add_parser("fiber", help="cone points parametrizing the same curve")
    p.add_argument("point")
    p.set_defaults(func=cmd_fiber)

    p = sub.add_parser("enumerate", help="all stable types of signature (g, n)")
    p.add_argument("-g", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--format", choices=formats, default="json")
    p.add_argument("--fvector", action="store_true")
    p.add_argument("--check-codim1", action="store_true")
    p.add_argument("--ht-path", nargs=2, metavar=("A", "B"))
    p.add_argument("--seed", type=int, default=None, help="shuffle generation order (output is unchanged)")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("dual", help="weighted dual graph of a nodal curve")
    p.add_argument("curve")
    p.add_argument("--format", choices=formats, default="json")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("dims", help="stratum dimensions of a stable graph")
    p.add_argument("graph")
    p.set_defaults(func=cmd_dims)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TropmodError as exc:
        print(f"tropmod {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
