"""Weighted contraction of edge sets, the contraction order, and 3-regular resolutions."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from itertools import combinations, count

from .canonical import CanonicalForm, canonical_form, canonical_key
from .errors import NotStable, UnknownEdge
from .graph import (
    EdgeId,
    Vertex,
    WeightedGraph,
    check_stable,
    connected_components,
    genus,
    require_hyperbolic,
)


@dataclass(frozen=True)
class ContractionResult:
    graph: WeightedGraph
    vertex_map: dict[Vertex, Vertex]
    edge_embedding: dict[EdgeId, EdgeId]  # surviving edge -> same edge of the input
    leg_map: dict[int, int]


def contract(G: WeightedGraph, S: Iterable[EdgeId]) -> ContractionResult:
    """Collapse every edge of ``S``.

    Each connected piece of the spanning subgraph with edge set ``S`` becomes
    one vertex, named after the first vertex of the piece in declaration
    order, whose weight is the piece's first Betti number plus its weights.
    """
    S = set(S)
    for e in S:
        if e not in G._edge_ends:
            raise UnknownEdge(e)
    contracted = [(a, b) for e, a, b in G.edges if e in S]
    pieces = connected_components(G.vertex_ids, contracted)
    vmap: dict[Vertex, Vertex] = {}
    for piece in pieces:
        for v in piece:
            vmap[v] = piece[0]
    inside = {piece[0]: 0 for piece in pieces}
    for a, _ in contracted:
        inside[vmap[a]] += 1
    vertices = tuple(
        (piece[0], inside[piece[0]] - len(piece) + 1 + sum(G.weight(v) for v in piece))
        for piece in pieces
    )
    edges = tuple((e, vmap[a], vmap[b]) for e, a, b in G.edges if e not in S)
    legs = tuple((i, vmap[v]) for i, v in G.legs)
    H = WeightedGraph(vertices, edges, legs, allow_disconnected=G.allow_disconnected)
    return ContractionResult(
        H,
        vmap,
        {e: e for e, _, _ in edges},
        {i: i for i, _ in G.legs},
    )


def leq(small: WeightedGraph, big: WeightedGraph) -> frozenset[EdgeId] | None:
    """An edge set ``S`` of ``big`` whose contraction is isomorphic to ``small``.

    Subsets are tried in lexicographic order of edge positions, so the
    witness is deterministic.  Returns None when ``small`` is not a weighted
    contraction of ``big``.
    """
    k = big.num_edges - small.num_edges
    if k < 0 or small.num_legs != big.num_legs or genus(small) != genus(big):
        return None
    if small.num_vertices > big.num_vertices:
        return None
    target = canonical_key(small)
    for S in combinations(big.edge_ids, k):
        if canonical_key(contract(big, S).graph) == target:
            return frozenset(S)
    return None


@dataclass(frozen=True)
class Cover:
    """A type one edge below ``G``, with the edges whose contraction reaches it."""

    edges: tuple[EdgeId, ...]
    form: CanonicalForm

    @property
    def multiplicity(self) -> int:
        return len(self.edges)


def covers(G: WeightedGraph) -> list[Cover]:
    found: dict[bytes, tuple[list[EdgeId], CanonicalForm]] = {}
    for e in G.edge_ids:
        cf = canonical_form(contract(G, [e]).graph)
        found.setdefault(cf.key, ([], cf))[0].append(e)
    return [Cover(tuple(es), cf) for _, (es, cf) in sorted(found.items())]


def _fresh(prefix: str, taken: set[str]) -> Iterable[str]:
    for i in count():
        name = f"{prefix}{i}"
        if name not in taken:
            yield name


def resolve_to_trivalent(G: WeightedGraph) -> tuple[WeightedGraph, frozenset[EdgeId]]:
    """A 3-regular weight-zero graph together with edges contracting it onto ``G``.

    Every unit of weight becomes a loop at its vertex; then, while some vertex
    has valence above three, its two lowest-numbered half-edges are moved to
    a new vertex joined to it by a new edge.  All added loops and splitting
    edges form the returned set.
    """
    require_hyperbolic(genus(G), G.num_legs)
    if not check_stable(G).stable:
        raise NotStable("resolution needs a stable graph")

    new_vertices = _fresh("r", set(G.vertex_ids))
    new_edges = _fresh("s", set(G.edge_ids))
    vertices = [v for v in G.vertex_ids]
    edges = [[e, a, b] for e, a, b in G.edges]
    legs = [[i, v] for i, v in G.legs]
    added: set[EdgeId] = set()
    for v, w in G.vertices:
        for _ in range(w):
            e = next(new_edges)
            edges.append([e, v, v])
            added.add(e)

    while True:
        # half-edge numbering as in WeightedGraph: edges first, then legs
        at: dict[Vertex, list[tuple[list, int]]] = {v: [] for v in vertices}
        for item in edges:
            at[item[1]].append((item, 1))
            at[item[2]].append((item, 2))
        for item in legs:
            at[item[1]].append((item, 1))
        v = next((u for u in vertices if len(at[u]) > 3), None)
        if v is None:
            break
        u = next(new_vertices)
        vertices.append(u)
        for item, slot in at[v][:2]:
            item[slot] = u
        e = next(new_edges)
        edges.append([e, v, u])
        added.add(e)

    resolved = WeightedGraph(
        tuple((v, 0) for v in vertices),
        tuple(tuple(e) for e in edges),
        tuple(tuple(leg) for leg in legs),
    )
    return resolved, frozenset(added)
