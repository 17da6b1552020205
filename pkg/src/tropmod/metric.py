"""Tropical curves: weighted graphs with edge lengths.

Lengths are exact: finite lengths are :class:`fractions.Fraction` and
infinity is ``math.inf``, which already absorbs under addition and sorts
above every fraction.
"""

from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, count
from typing import Any, Union

from .canonical import automorphism_group, canonical_key, canonical_orderings, isomorphism
from .contraction import contract
from .errors import InvalidCurve, ParseError
from .graph import EdgeId, WeightedGraph, check_stable, genus, require_hyperbolic, to_json, validate

Length = Union[Fraction, float]
INF = math.inf


def parse_length(value: Any, *, allow_zero: bool = False) -> Length:
    """Read a length from JSON: a number, ``"p/q"``, or ``"inf"``."""
    if isinstance(value, bool):
        raise InvalidCurve(f"not a length: {value!r}")
    if value in ("inf", "infinity", "∞") or (isinstance(value, float) and math.isinf(value) and value > 0):
        return INF
    try:
        x = Fraction(str(value)) if isinstance(value, (int, float, str)) else Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError):
        raise InvalidCurve(f"not a length: {value!r}") from None
    if x < 0 or (x == 0 and not allow_zero):
        raise InvalidCurve(f"length must be {'non-negative' if allow_zero else 'positive'}, got {value!r}")
    return x


def format_length(x: Length) -> int | str:
    if x == INF:
        return "inf"
    x = Fraction(x)
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _leaf_edges(G: WeightedGraph) -> set[EdgeId]:
    """Edges at a weight-zero vertex of valence one."""
    out = set()
    for v, w in G.vertices:
        hs = G.incident[v]
        if w == 0 and len(hs) == 1:
            e = G.edge_of_half_edge(hs[0])
            if e is not None:
                out.add(e)
    return out


def _normalize(G: WeightedGraph, values: Mapping[EdgeId, Any] | tuple, allow_zero: bool) -> tuple[tuple[EdgeId, Length], ...]:
    values = dict(values)
    extra = set(values) - set(G.edge_ids)
    if extra:
        raise InvalidCurve(f"lengths given for unknown edges {sorted(extra)}")
    missing = [e for e in G.edge_ids if e not in values]
    if missing:
        raise InvalidCurve(f"no length for edges {missing}")
    return tuple((e, parse_length(values[e], allow_zero=allow_zero)) for e in G.edge_ids)


@dataclass(frozen=True)
class TropicalCurve:
    """A weighted graph with a length in ``(0, inf]`` on each edge.

    Unless ``extended``, an edge has infinite length exactly when it ends at
    a weight-zero vertex of valence one.  Legs carry no stored length.
    """

    graph: WeightedGraph
    lengths: tuple[tuple[EdgeId, Length], ...]
    extended: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "lengths", _normalize(self.graph, self.lengths, allow_zero=False))
        if not self.extended:
            leaves = _leaf_edges(self.graph)
            for e, x in self.lengths:
                if (x == INF) != (e in leaves):
                    kind = "leaf edge" if e in leaves else "edge"
                    raise InvalidCurve(f"{kind} {e!r} has length {format_length(x)}; only leaf edges are infinite")

    @cached_property
    def length_map(self) -> dict[EdgeId, Length]:
        return dict(self.lengths)

    def length(self, e: EdgeId) -> Length:
        return self.length_map[e]


def curve_from_json(raw: Mapping[str, Any], *, extended: bool | None = None) -> TropicalCurve:
    G = validate(raw)
    lengths = raw.get("lengths")
    if not isinstance(lengths, Mapping):
        raise ParseError("expected an object mapping edge ids to lengths", field="lengths")
    ext = bool(raw.get("extended", False)) if extended is None else extended
    return TropicalCurve(G, tuple(lengths.items()), ext)


def curve_to_json(C: TropicalCurve) -> dict[str, Any]:
    out = to_json(C.graph)
    out["lengths"] = {e: format_length(x) for e, x in C.lengths}
    if C.extended:
        out["extended"] = True
    return out


# -- tropical equivalence --------------------------------------------------------


def stabilize(C: TropicalCurve) -> TropicalCurve:
    """The stable representative of the tropical equivalence class of ``C``.

    Weight-zero vertices are removed while possible: valence one together
    with its edge; valence two without legs by merging the two edges
    (lengths add); valence two with a leg by letting the edge merge into
    the leg.
    """
    G = C.graph
    require_hyperbolic(genus(G), G.num_legs)
    weights = dict(G.vertices)
    edges = {e: [a, b, C.length(e)] for e, a, b in G.edges}
    legs = dict(G.legs)

    while True:
        at: dict[str, list[tuple[str, EdgeId | int]]] = {v: [] for v in weights}
        for e, (a, b, _) in edges.items():
            at[a].append(("edge", e))
            at[b].append(("edge", e))
        for i, v in legs.items():
            at[v].append(("leg", i))
        light = [v for v in weights if weights[v] == 0]

        leaf = next((v for v in light if len(at[v]) == 1 and at[v][0][0] == "edge"), None)
        if leaf is not None:
            del edges[at[leaf][0][1]]
            del weights[leaf]
            continue

        bare = next((v for v in light if len(at[v]) == 2 and all(k == "edge" for k, _ in at[v])), None)
        if bare is not None:
            (_, e1), (_, e2) = at[bare]
            if e1 == e2:
                # lone loop: genus 1 without legs, excluded by the signature check
                raise AssertionError("unreachable: degenerate (1, 0) curve")
            a = _other_end(edges[e1], bare)
            b = _other_end(edges[e2], bare)
            edges[e1] = [a, b, edges[e1][2] + edges[e2][2]]
            del edges[e2]
            del weights[bare]
            continue

        marked = next(
            (v for v in light if len(at[v]) == 2 and sorted(k for k, _ in at[v]) == ["edge", "leg"]),
            None,
        )
        if marked is not None:
            e = next(x for k, x in at[marked] if k == "edge")
            i = next(x for k, x in at[marked] if k == "leg")
            legs[i] = _other_end(edges[e], marked)
            del edges[e]
            del weights[marked]
            continue
        break

    H = WeightedGraph(
        tuple(weights.items()),
        tuple((e, a, b) for e, (a, b, _) in edges.items()),
        tuple(sorted(legs.items())),
    )
    return TropicalCurve(H, tuple((e, x) for e, (_, _, x) in edges.items()), C.extended)


def _other_end(edge: list, v: str) -> str:
    a, b, _ = edge
    return b if a == v else a


def separate_legs(C: TropicalCurve, length: Length = Fraction(1)) -> TropicalCurve:
    """An equivalent curve in which no two legs share a vertex.

    At a vertex carrying several legs, the leg with the smallest label
    stays and each other leg moves to a new weight-zero vertex joined to
    the old one by an edge of the given length.
    """
    length = parse_length(length)
    G = C.graph
    fresh_v = (f"q{i}" for i in count() if f"q{i}" not in G._weights)
    fresh_e = (f"t{i}" for i in count() if f"t{i}" not in G._edge_ends)
    vertices = list(G.vertices)
    edges = list(G.edges)
    lengths = list(C.lengths)
    legs = []
    for v in G.vertex_ids:
        labels = G.legs_at(v)
        if labels:
            legs.append((labels[0], v))
        for i in labels[1:]:
            u, e = next(fresh_v), next(fresh_e)
            vertices.append((u, 0))
            edges.append((e, v, u))
            lengths.append((e, length))
            legs.append((i, u))
    H = WeightedGraph(tuple(vertices), tuple(edges), tuple(sorted(legs)))
    return TropicalCurve(H, tuple(lengths), C.extended)


# -- isometry ------------------------------------------------------------------


def metric_key(C: TropicalCurve) -> tuple[bytes, tuple]:
    """Canonical key of the metric graph as given (no stabilization).

    The combinatorial key plus, over all canonical vertex orderings, the
    least vector of sorted length multisets per endpoint pair.  Parallel
    edges can be permuted freely by automorphisms, so multisets suffice.
    """
    G = C.graph
    key, orderings = canonical_orderings(G)
    best = None
    for order in orderings:
        pos = {v: i for i, v in enumerate(order)}
        groups: dict[tuple[int, int], list[Length]] = {}
        for e, a, b in G.edges:
            groups.setdefault(tuple(sorted((pos[a], pos[b]))), []).append(C.length(e))
        vec = tuple((pair, tuple(sorted(xs))) for pair, xs in sorted(groups.items()))
        if best is None or vec < best:
            best = vec
    return key, best


def is_isometric(C1: TropicalCurve, C2: TropicalCurve) -> bool:
    if not check_stable(C1.graph).stable:
        C1 = stabilize(C1)
    if not check_stable(C2.graph).stable:
        C2 = stabilize(C2)
    return metric_key(C1) == metric_key(C2)


# -- cones -------------------------------------------------------------------------


@dataclass(frozen=True)
class ConePoint:
    """A point of the closed cone ``R_{>=0}^{E(base)}``."""

    base: WeightedGraph
    coords: tuple[tuple[EdgeId, Fraction], ...] = field()

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", _normalize(self.base, self.coords, allow_zero=True))
        for e, x in self.coords:
            if x == INF:
                raise InvalidCurve(f"cone coordinate of {e!r} must be finite")

    @cached_property
    def coord_map(self) -> dict[EdgeId, Fraction]:
        return dict(self.coords)

    @property
    def zero_edges(self) -> tuple[EdgeId, ...]:
        return tuple(e for e, x in self.coords if x == 0)


def face_contract(p: ConePoint) -> TropicalCurve:
    """The curve parametrized by ``p``: zero edges are contracted, the rest keep their coordinate."""
    res = contract(p.base, p.zero_edges)
    return TropicalCurve(res.graph, tuple((e, p.coord_map[e]) for e in res.graph.edge_ids))


def fiber(p: ConePoint) -> frozenset[ConePoint]:
    """All points of the closed cone parametrizing a curve isometric to ``face_contract(p)``.

    For every face whose contraction type matches that of ``p``, ``p`` is
    carried over by one fixed isomorphism and the result is closed under
    the automorphisms of that face's graph.
    """
    base = p.base
    I = p.zero_edges
    GI = contract(base, I).graph
    key = canonical_key(GI)
    out: set[ConePoint] = set()
    for J in combinations(base.edge_ids, len(I)):
        GJ = contract(base, J).graph
        if canonical_key(GJ) != key:
            continue
        if J == I:
            emap = {e: e for e in GI.edge_ids}
        else:
            found = isomorphism(GI, GJ)
            assert found is not None
            emap = found[1]
        start = tuple(sorted((emap[e], p.coord_map[e]) for e in GI.edge_ids))
        gens = automorphism_group(GJ).edge_action_generators
        seen = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for q in frontier:
                for s in gens:
                    r = tuple(sorted((s(e), x) for e, x in q))
                    if r not in seen:
                        seen.add(r)
                        nxt.append(r)
            frontier = nxt
        zeros = {e: Fraction(0) for e in J}
        for q in seen:
            out.add(ConePoint(base, tuple({**zeros, **dict(q)}.items())))
    return frozenset(out)


def cone_point_from_json(raw: Mapping[str, Any]) -> ConePoint:
    G = validate(raw)
    coords = raw.get("coords", raw.get("lengths"))
    if not isinstance(coords, Mapping):
        raise ParseError("expected an object mapping edge ids to coordinates", field="coords")
    return ConePoint(G, tuple(coords.items()))
