"""Weighted graphs with labeled legs in the half-edge formalism.

A graph is stored as three tuples: vertices ``(id, weight)``, edges
``(id, end, end)`` and legs ``(label, vertex)``.  The half-edge structure
is derived from that data deterministically: edge number ``k`` (in
declaration order) owns half-edges ``2k`` (at its first end) and ``2k + 1``
(at its second end), and the ``i``-th declared leg is half-edge
``2|E| + i``, a fixed point of the involution.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

from .errors import (
    BadLegLabels,
    DanglingEndpoint,
    DegenerateSignature,
    Disconnected,
    DuplicateLegLabel,
    InvalidGraph,
    NegativeWeight,
    ParseError,
    UnknownEdge,
    UnknownVertex,
)

Vertex = str
EdgeId = str


@dataclass(frozen=True)
class HalfEdge:
    id: int
    endpoint: Vertex
    partner: int
    leg_label: int | None = None

    @property
    def is_leg(self) -> bool:
        return self.partner == self.id


@dataclass(frozen=True)
class WeightedGraph:
    """An immutable connected weighted graph with legs labeled ``1..n``.

    ``allow_disconnected`` exists for intermediate objects built inside
    algorithms; graphs coming from user input are always connected.
    """

    vertices: tuple[tuple[Vertex, int], ...]
    edges: tuple[tuple[EdgeId, Vertex, Vertex], ...] = ()
    legs: tuple[tuple[int, Vertex], ...] = ()
    allow_disconnected: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple((str(v), int(w)) for v, w in self.vertices))
        object.__setattr__(self, "edges", tuple((str(e), str(a), str(b)) for e, a, b in self.edges))
        object.__setattr__(self, "legs", tuple((int(i), str(v)) for i, v in self.legs))
        self._validate()

    def _validate(self) -> None:
        if not self.vertices:
            raise InvalidGraph("a graph needs at least one vertex")
        ids = [v for v, _ in self.vertices]
        if len(set(ids)) != len(ids):
            raise InvalidGraph(f"duplicate vertex ids: {_dupes(ids)}")
        for v, w in self.vertices:
            if w < 0:
                raise NegativeWeight(f"vertex {v!r} has negative weight {w}")
        known = set(ids)
        edge_ids = [e for e, _, _ in self.edges]
        if len(set(edge_ids)) != len(edge_ids):
            raise InvalidGraph(f"duplicate edge ids: {_dupes(edge_ids)}")
        for e, a, b in self.edges:
            for end in (a, b):
                if end not in known:
                    raise DanglingEndpoint(f"edge {e!r} ends at undeclared vertex {end!r}")
        labels = [i for i, _ in self.legs]
        if len(set(labels)) != len(labels):
            raise DuplicateLegLabel(f"leg labels used more than once: {_dupes(labels)}")
        if sorted(labels) != list(range(1, len(labels) + 1)):
            raise BadLegLabels(f"leg labels must be exactly 1..{len(labels)}, got {sorted(labels)}")
        for i, v in self.legs:
            if v not in known:
                raise DanglingEndpoint(f"leg {i} attached to undeclared vertex {v!r}")
        if not self.allow_disconnected and len(self.components()) > 1:
            raise Disconnected("graph is not connected")

    # -- lookups -------------------------------------------------------

    @cached_property
    def _weights(self) -> dict[Vertex, int]:
        return dict(self.vertices)

    @cached_property
    def _vertex_index(self) -> dict[Vertex, int]:
        return {v: i for i, (v, _) in enumerate(self.vertices)}

    @cached_property
    def _edge_ends(self) -> dict[EdgeId, tuple[Vertex, Vertex]]:
        return {e: (a, b) for e, a, b in self.edges}

    @property
    def vertex_ids(self) -> tuple[Vertex, ...]:
        return tuple(v for v, _ in self.vertices)

    @property
    def edge_ids(self) -> tuple[EdgeId, ...]:
        return tuple(e for e, _, _ in self.edges)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def num_legs(self) -> int:
        return len(self.legs)

    def weight(self, v: Vertex) -> int:
        try:
            return self._weights[v]
        except KeyError:
            raise UnknownVertex(v) from None

    def vertex_order(self, v: Vertex) -> int:
        """Position of ``v`` in declaration order; this is how vertex ids compare."""
        try:
            return self._vertex_index[v]
        except KeyError:
            raise UnknownVertex(v) from None

    def ends(self, e: EdgeId) -> tuple[Vertex, Vertex]:
        try:
            return self._edge_ends[e]
        except KeyError:
            raise UnknownEdge(e) from None

    def is_loop(self, e: EdgeId) -> bool:
        a, b = self.ends(e)
        return a == b

    @cached_property
    def leg_map(self) -> dict[int, Vertex]:
        return dict(self.legs)

    @property
    def total_weight(self) -> int:
        return sum(w for _, w in self.vertices)

    @cached_property
    def half_edges(self) -> tuple[HalfEdge, ...]:
        out = []
        for k, (_, a, b) in enumerate(self.edges):
            out.append(HalfEdge(2 * k, a, 2 * k + 1))
            out.append(HalfEdge(2 * k + 1, b, 2 * k))
        base = 2 * len(self.edges)
        for i, (label, v) in enumerate(self.legs):
            out.append(HalfEdge(base + i, v, base + i, label))
        return tuple(out)

    def edge_of_half_edge(self, h: int) -> EdgeId | None:
        """The edge owning half-edge ``h``, or None when ``h`` is a leg."""
        k = h // 2
        return self.edges[k][0] if k < len(self.edges) else None

    @cached_property
    def incident(self) -> dict[Vertex, tuple[int, ...]]:
        """Half-edge ids at each vertex, in increasing order."""
        out: dict[Vertex, list[int]] = {v: [] for v, _ in self.vertices}
        for h in self.half_edges:
            out[h.endpoint].append(h.id)
        return {v: tuple(hs) for v, hs in out.items()}

    @cached_property
    def multiplicity(self) -> Counter[frozenset[Vertex]]:
        """Number of edges between each unordered pair (singleton set for loops)."""
        return Counter(frozenset((a, b)) for _, a, b in self.edges)

    def legs_at(self, v: Vertex) -> tuple[int, ...]:
        return tuple(sorted(i for i, u in self.legs if u == v))

    def components(self) -> list[list[Vertex]]:
        return connected_components(self.vertex_ids, ((a, b) for _, a, b in self.edges))

    # -- constructors ----------------------------------------------------

    @classmethod
    def build(
        cls,
        weights: Sequence[int] | Mapping[Vertex, int],
        edges: Iterable[tuple[Any, Any]] = (),
        legs: Mapping[int, Any] | None = None,
        *,
        allow_disconnected: bool = False,
    ) -> WeightedGraph:
        """Short-hand constructor.

        With a sequence of weights the vertices are named ``v0, v1, ...`` and
        edges and legs may refer to them by index.  Edges get ids ``e0, e1, ...``.

        >>> theta = WeightedGraph.build([0, 0], [(0, 1)] * 3)
        >>> genus(theta)
        2
        """
        if isinstance(weights, Mapping):
            vertices = [(str(v), w) for v, w in weights.items()]
        else:
            vertices = [(f"v{i}", w) for i, w in enumerate(weights)]

        def name(x: Any) -> str:
            return f"v{x}" if isinstance(x, int) and not isinstance(weights, Mapping) else str(x)

        return cls(
            tuple(vertices),
            tuple((f"e{k}", name(a), name(b)) for k, (a, b) in enumerate(edges)),
            tuple((int(i), name(v)) for i, v in sorted((legs or {}).items())),
            allow_disconnected=allow_disconnected,
        )


def _dupes(items: Iterable[Any]) -> list[Any]:
    return sorted(x for x, c in Counter(items).items() if c > 1)


def connected_components(vertices: Iterable[Vertex], edges: Iterable[tuple[Vertex, Vertex]]) -> list[list[Vertex]]:
    """Components as lists of vertices, each in input order, ordered by first vertex."""
    order = list(vertices)
    parent = {v: v for v in order}

    def find(x: Vertex) -> Vertex:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra
    groups: dict[Vertex, list[Vertex]] = {}
    for v in order:
        groups.setdefault(find(v), []).append(v)
    return list(groups.values())


# -- numerical invariants ------------------------------------------------


def valence(G: WeightedGraph, v: Vertex) -> int:
    """Half-edges (legs included) at ``v``; a loop counts twice."""
    G.weight(v)
    return len(G.incident[v])


def first_betti(G: WeightedGraph) -> int:
    return G.num_edges - G.num_vertices + len(G.components())


def genus(G: WeightedGraph) -> int:
    return first_betti(G) + G.total_weight


def stability_degree(G: WeightedGraph, v: Vertex) -> int:
    """``2 w(v) - 2 + val(v)``, the degree of the log-canonical bundle on the component."""
    return 2 * G.weight(v) - 2 + valence(G, v)


def signature(G: WeightedGraph) -> tuple[int, int]:
    return genus(G), G.num_legs


def require_hyperbolic(g: int, n: int) -> None:
    if 2 * g - 2 + n < 1:
        raise DegenerateSignature(f"(g, n) = ({g}, {n}) has 2g - 2 + n = {2 * g - 2 + n} < 1")


def is_trivalent(G: WeightedGraph) -> bool:
    return all(len(hs) == 3 for hs in G.incident.values())


def is_maximal_type(G: WeightedGraph) -> bool:
    """3-regular with every weight zero: the top-dimensional strata."""
    return is_trivalent(G) and G.total_weight == 0


@dataclass(frozen=True)
class StabilityReport:
    stable: bool
    offending: tuple[tuple[Vertex, int, int], ...] = ()


def check_stable(G: WeightedGraph) -> StabilityReport:
    bad = tuple(
        (v, w, valence(G, v)) for v, w in G.vertices if stability_degree(G, v) <= 0
    )
    return StabilityReport(not bad, bad)


# -- JSON ------------------------------------------------------------------


def validate(raw: Mapping[str, Any]) -> WeightedGraph:
    """Build a graph from the JSON interchange dictionary.

    Shape errors raise :class:`ParseError`; invariant violations raise the
    matching :class:`InvalidGraph` subclass.
    """
    if not isinstance(raw, Mapping):
        raise ParseError("graph must be a JSON object")
    vertices = []
    for i, item in enumerate(_list_field(raw, "vertices", required=True)):
        vid = _get(item, "id", f"vertices[{i}]")
        weight = item.get("weight", 0)
        if not isinstance(weight, int) or isinstance(weight, bool):
            raise ParseError("weight must be an integer", field=f"vertices[{i}].weight")
        vertices.append((str(vid), weight))
    edges = []
    for i, item in enumerate(_list_field(raw, "edges")):
        ends = _get(item, "ends", f"edges[{i}]")
        if not isinstance(ends, list) or len(ends) != 2:
            raise ParseError("ends must be a list of two vertex ids", field=f"edges[{i}].ends")
        edges.append((str(item.get("id", f"e{i}")), str(ends[0]), str(ends[1])))
    legs = []
    for i, item in enumerate(_list_field(raw, "legs")):
        label = _get(item, "label", f"legs[{i}]")
        if not isinstance(label, int) or isinstance(label, bool):
            raise ParseError("leg label must be an integer", field=f"legs[{i}].label")
        legs.append((label, str(_get(item, "vertex", f"legs[{i}]"))))
    return WeightedGraph(tuple(vertices), tuple(edges), tuple(legs))


def _list_field(raw: Mapping[str, Any], key: str, required: bool = False) -> list[Any]:
    if key not in raw:
        if required:
            raise ParseError("missing required key", field=key)
        return []
    value = raw[key]
    if not isinstance(value, list) or not all(isinstance(x, Mapping) for x in value):
        raise ParseError("expected a list of objects", field=key)
    return value


def _get(item: Mapping[str, Any], key: str, where: str) -> Any:
    if key not in item:
        raise ParseError("missing required key", field=f"{where}.{key}")
    return item[key]


def to_json(G: WeightedGraph) -> dict[str, Any]:
    return {
        "vertices": [{"id": v, "weight": w} for v, w in G.vertices],
        "edges": [{"id": e, "ends": [a, b]} for e, a, b in G.edges],
        "legs": [{"label": i, "vertex": v} for i, v in sorted(G.legs)],
    }
