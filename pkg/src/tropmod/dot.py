"""Graphviz DOT text for graphs and strata posets."""

from __future__ import annotations

from typing import TYPE_CHECKING

from .graph import WeightedGraph

if TYPE_CHECKING:
    from .enumeration import StrataPoset


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def graph_to_dot(G: WeightedGraph, lengths: dict[str, str] | None = None) -> str:
    """Undirected DOT drawing: vertices labelled ``w=k``, legs as numbered point nodes."""
    lines = ["graph G {"]
    for v, w in G.vertices:
        shape = "circle" if w == 0 else "doublecircle"
        lines.append(f"  {_quote(v)} [label={_quote(f'w={w}')}, shape={shape}];")
    for e, a, b in G.edges:
        label = e if lengths is None else f"{e}: {lengths[e]}"
        lines.append(f"  {_quote(a)} -- {_quote(b)} [label={_quote(label)}];")
    for i, v in sorted(G.legs):
        leg = f"leg{i}"
        lines.append(f"  {_quote(leg)} [label={_quote(str(i))}, shape=plaintext];")
        lines.append(f"  {_quote(v)} -- {_quote(leg)} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def poset_to_dot(P: StrataPoset) -> str:
    """Hasse diagram of single-edge contractions, largest strata on top."""
    lines = [f"digraph strata_g{P.g}_n{P.n} {{", "  rankdir=TB;"]
    for i, node in enumerate(P.nodes):
        weights = ",".join(str(w) for _, w in node.graph.vertices)
        lines.append(f"  n{i} [label={_quote(f'|E|={node.num_edges}, w=({weights})')}];")
    for c in P.cover_edges:
        attr = f" [label={_quote(f'×{c.multiplicity}')}]" if c.multiplicity > 1 else ""
        lines.append(f"  n{c.upper} -> n{c.lower}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"
