"""Pointed nodal curves through their dual graphs.

A curve is described only combinatorially: components with their
geometric genus, nodes as pairs of components (a pair with equal entries
is a self-node), and the component carrying each marked point.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Any, NamedTuple

from .errors import BadMarking, Disconnected, InvalidGraph, NotStable, ParseError
from .graph import (
    StabilityReport,
    WeightedGraph,
    check_stable,
    connected_components,
    genus,
    require_hyperbolic,
)

Component = str


@dataclass(frozen=True)
class NodalCurveDesc:
    components: tuple[tuple[Component, int], ...]
    nodes: tuple[tuple[Component, Component], ...] = ()
    points: tuple[tuple[int, Component], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", tuple((str(c), int(g)) for c, g in self.components))
        object.__setattr__(self, "nodes", tuple((str(a), str(b)) for a, b in self.nodes))
        object.__setattr__(self, "points", tuple(sorted((int(i), str(c)) for i, c in self.points)))
        ids = [c for c, _ in self.components]
        if not ids or len(set(ids)) != len(ids):
            raise InvalidGraph("components must be non-empty with distinct ids")
        if any(g < 0 for _, g in self.components):
            raise InvalidGraph("geometric genus must be non-negative")
        known = set(ids)
        for a, b in self.nodes:
            if a not in known or b not in known:
                raise InvalidGraph(f"node {(a, b)} lies on an undeclared component")
        labels = [i for i, _ in self.points]
        if labels != list(range(1, len(labels) + 1)):
            raise BadMarking(f"marked points must be labeled 1..{len(labels)} once each, got {labels}")
        for i, c in self.points:
            if c not in known:
                raise BadMarking(f"point {i} lies on undeclared component {c!r}")
        if len(connected_components(ids, self.nodes)) > 1:
            raise Disconnected("the curve is not connected")

    @property
    def arithmetic_genus(self) -> int:
        ids = [c for c, _ in self.components]
        b1 = len(self.nodes) - len(ids) + 1
        return b1 + sum(g for _, g in self.components)


def dual_graph(X: NodalCurveDesc) -> WeightedGraph:
    """One vertex per component weighted by its geometric genus, one edge per node, one leg per point."""
    return WeightedGraph(
        X.components,
        tuple((f"n{k}", a, b) for k, (a, b) in enumerate(X.nodes)),
        X.points,
    )


def component_degrees(X: NodalCurveDesc) -> dict[Component, int]:
    """Degree of the log-canonical bundle on each component.

    ``2 p_a(E) - 2 + #points on E + #(E meet the rest)``, where a self-node
    raises the arithmetic genus of its component by one.
    """
    self_nodes = Counter(a for a, b in X.nodes if a == b)
    meets = Counter()
    for a, b in X.nodes:
        if a != b:
            meets[a] += 1
            meets[b] += 1
    marked = Counter(c for _, c in X.points)
    return {
        c: 2 * (g + self_nodes[c]) - 2 + marked[c] + meets[c]
        for c, g in X.components
    }


def is_stable_curve(X: NodalCurveDesc) -> StabilityReport:
    return check_stable(dual_graph(X))


def stabilize_curve(X: NodalCurveDesc) -> WeightedGraph:
    """Dual graph of the stable model of ``X``.

    Unpointed rational tails are removed first.  Then each exceptional
    component (smooth, rational, unmarked, meeting the rest twice) is
    contracted, fusing its two nodes into one.  Last, every rational tail
    carrying a single point is removed and the point is moved to where the
    tail was attached.
    """
    require_hyperbolic(X.arithmetic_genus, len(X.points))
    genera = dict(X.components)
    nodes = list(X.nodes)
    points = dict(X.points)

    def special(c: Component) -> tuple[list[int], list[int]]:
        at_nodes = [k for k, (a, b) in enumerate(nodes) for end in (a, b) if end == c]
        at_points = [i for i, p in points.items() if p == c]
        return at_nodes, at_points

    def rational_smooth(c: Component) -> bool:
        return genera[c] == 0 and all(not (a == b == c) for a, b in nodes)

    def other(k: int, c: Component) -> Component:
        a, b = nodes[k]
        return b if a == c else a

    # step 1: unpointed rational tails
    changed = True
    while changed:
        changed = False
        for c in list(genera):
            ks, ps = special(c)
            if rational_smooth(c) and len(ks) == 1 and not ps:
                del nodes[ks[0]]
                del genera[c]
                changed = True
                break

    # step 2a: exceptional components
    changed = True
    while changed:
        changed = False
        for c in list(genera):
            ks, ps = special(c)
            if rational_smooth(c) and len(ks) == 2 and not ps:
                k1, k2 = ks
                fused = (other(k1, c), other(k2, c))
                nodes[k1] = fused
                del nodes[k2]
                del genera[c]
                changed = True
                break

    # step 2b: uni-pointed rational tails
    changed = True
    while changed:
        changed = False
        for c in list(genera):
            ks, ps = special(c)
            if rational_smooth(c) and len(ks) == 1 and len(ps) == 1:
                points[ps[0]] = other(ks[0], c)
                del nodes[ks[0]]
                del genera[c]
                changed = True
                break

    stable = NodalCurveDesc(tuple(genera.items()), tuple(nodes), tuple(points.items()))
    return dual_graph(stable)


class StratumDims(NamedTuple):
    dim_alg: int
    codim_trop: int
    dim_trop: int


def stratum_dims(G: WeightedGraph) -> StratumDims:
    """Dimension of the algebraic stratum and (co)dimension of the tropical one."""
    if not check_stable(G).stable:
        raise NotStable("dimensions are defined for stable graphs only")
    g, n = genus(G), G.num_legs
    require_hyperbolic(g, n)
    dim_alg = 3 * g - 3 + n - G.num_edges
    return StratumDims(dim_alg, dim_alg, G.num_edges)


def curve_from_json(raw: Mapping[str, Any]) -> NodalCurveDesc:
    if not isinstance(raw, Mapping):
        raise ParseError("curve must be a JSON object")
    comps = raw.get("components")
    if not isinstance(comps, list) or not all(isinstance(c, Mapping) and "id" in c for c in comps):
        raise ParseError("expected a list of {id, genus} objects", field="components")
    nodes = raw.get("nodes", [])
    if not isinstance(nodes, list) or not all(isinstance(x, list) and len(x) == 2 for x in nodes):
        raise ParseError("expected a list of component pairs", field="nodes")
    points = raw.get("points", {})
    if not isinstance(points, Mapping):
        raise ParseError("expected an object mapping labels to components", field="points")
    try:
        marked = tuple((int(k), v) for k, v in points.items())
    except ValueError:
        raise ParseError("point labels must be integers", field="points") from None
    return NodalCurveDesc(
        tuple((c["id"], c.get("genus", 0)) for c in comps),
        tuple(tuple(x) for x in nodes),
        marked,
    )


def curve_to_json(X: NodalCurveDesc) -> dict[str, Any]:
    return {
        "components": [{"id": c, "genus": g} for c, g in X.components],
        "nodes": [[a, b] for a, b in X.nodes],
        "points": {str(i): c for i, c in X.points},
    }
