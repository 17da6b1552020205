"""Canonical labeling, isomorphism and automorphisms of weighted legged graphs.

Vertices are coloured by (weight, valence, leg labels, loop count) and the
colouring is refined by neighbour colours with edge multiplicities.  The
search then individualizes vertices of the first non-singleton cell and
explores the whole tree; every discrete leaf orders the vertices and yields
a certificate.  The least certificate is the canonical one.  Leaves
carrying it are in bijection with the vertex automorphisms, because the
refinement never looks at vertex ids.

Half-edge symmetries are not searched for: once the vertex map is fixed,
parallel edges between the same two vertices can be permuted freely and a
loop can be flipped, while every other half-edge image is forced.
"""

from __future__ import annotations

import json
import math
from collections.abc import Iterator, Mapping
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from .graph import EdgeId, Vertex, WeightedGraph, valence

Point = Union[Vertex, int]  # vertex id or half-edge id
Certificate = tuple


@dataclass(frozen=True)
class _SearchResult:
    certificate: Certificate
    leaves: tuple[tuple[Vertex, ...], ...]  # all leaves carrying the certificate


def _initial_colours(G: WeightedGraph, labeled_legs: bool) -> dict[Vertex, int]:
    inv = {}
    for v in G.vertex_ids:
        legs = G.legs_at(v)
        inv[v] = (
            G.weight(v),
            valence(G, v),
            legs if labeled_legs else (len(legs),),
            G.multiplicity[frozenset((v,))],
        )
    return _rank(inv)


def _rank(sig: Mapping[Vertex, tuple]) -> dict[Vertex, int]:
    ranks = {s: i for i, s in enumerate(sorted(set(sig.values())))}
    return {v: ranks[s] for v, s in sig.items()}


def _neighbours(G: WeightedGraph) -> dict[Vertex, list[tuple[Vertex, int]]]:
    adj: dict[Vertex, list[tuple[Vertex, int]]] = {v: [] for v in G.vertex_ids}
    for pair, m in G.multiplicity.items():
        if len(pair) == 2:
            a, b = tuple(pair)
            adj[a].append((b, m))
            adj[b].append((a, m))
    return adj


def _refine(colours: dict[Vertex, int], adj) -> dict[Vertex, int]:
    ncells = len(set(colours.values()))
    while True:
        sig = {
            v: (c, tuple(sorted((colours[u], m) for u, m in adj[v])))
            for v, c in colours.items()
        }
        colours = _rank(sig)
        k = len(set(colours.values()))
        if k == ncells:
            return colours
        ncells = k


def _certificate(G: WeightedGraph, order: tuple[Vertex, ...], labeled_legs: bool) -> Certificate:
    pos = {v: i for i, v in enumerate(order)}
    weights = tuple(G.weight(v) for v in order)
    if labeled_legs:
        legs = tuple(sorted((i, pos[v]) for i, v in G.legs))
    else:
        legs = tuple(len(G.legs_at(v)) for v in order)
    edges = tuple(sorted(tuple(sorted((pos[a], pos[b]))) for _, a, b in G.edges))
    return (len(order), weights, legs, edges)


@lru_cache(maxsize=65536)
def _search(G: WeightedGraph, labeled_legs: bool = True) -> _SearchResult:
    adj = _neighbours(G)
    best: Certificate | None = None
    best_leaves: list[tuple[Vertex, ...]] = []

    def visit(colours: dict[Vertex, int]) -> None:
        nonlocal best, best_leaves
        cells: dict[int, list[Vertex]] = {}
        for v in G.vertex_ids:
            cells.setdefault(colours[v], []).append(v)
        target = next((c for c in sorted(cells) if len(cells[c]) > 1), None)
        if target is None:
            order = tuple(cells[c][0] for c in sorted(cells))
            cert = _certificate(G, order, labeled_legs)
            if best is None or cert < best:
                best, best_leaves = cert, [order]
            elif cert == best:
                best_leaves.append(order)
            return
        for v in cells[target]:
            split = {x: (c, 0 if x == v else 1) for x, c in colours.items()}
            visit(_refine(_rank(split), adj))

    visit(_refine(_initial_colours(G, labeled_legs), adj))
    assert best is not None
    return _SearchResult(best, tuple(best_leaves))


def _graph_from_certificate(cert: Certificate) -> WeightedGraph:
    nv, weights, legs, edges = cert
    return WeightedGraph(
        tuple((f"v{i}", weights[i]) for i in range(nv)),
        tuple((f"e{k}", f"v{a}", f"v{b}") for k, (a, b) in enumerate(edges)),
        tuple((label, f"v{p}") for label, p in legs),
    )


@dataclass(frozen=True)
class Relabeling:
    vertices: Mapping[Vertex, Vertex]
    edges: Mapping[EdgeId, EdgeId]
    half_edges: Mapping[int, int]


@dataclass(frozen=True, eq=False)
class CanonicalForm:
    """``key`` identifies the isomorphism class; ``graph`` is the canonical representative."""

    key: bytes
    graph: WeightedGraph
    relabeling: Relabeling

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CanonicalForm) and self.key == other.key

    def __lt__(self, other: CanonicalForm) -> bool:
        return self.key < other.key

    def __hash__(self) -> int:
        return hash(self.key)


def _encode(cert: Certificate) -> bytes:
    return json.dumps(cert, separators=(",", ":")).encode()


def canonical_key(G: WeightedGraph, *, labeled_legs: bool = True) -> bytes:
    """Byte key of the isomorphism class.

    With ``labeled_legs=False`` the legs are treated as indistinguishable,
    which collapses leg relabelings; this mode exists only for drawing-style
    shape counts.
    """
    return _encode(_search(G, labeled_legs).certificate)


def _edge_classes(G: WeightedGraph) -> dict[frozenset[Vertex], list[int]]:
    """Edge indices grouped by unordered endpoint pair, in declaration order."""
    out: dict[frozenset[Vertex], list[int]] = {}
    for k, (_, a, b) in enumerate(G.edges):
        out.setdefault(frozenset((a, b)), []).append(k)
    return out


def _lift(G: WeightedGraph, H: WeightedGraph, vmap: Mapping[Vertex, Vertex]) -> dict[int, int]:
    """Half-edge bijection G -> H over the vertex bijection ``vmap``.

    Parallel edges are matched in declaration order and loops keep their
    orientation; legs go to the leg with the same label.
    """
    hmap: dict[int, int] = {}
    classes_h = _edge_classes(H)
    for pair, ks in _edge_classes(G).items():
        image = classes_h[frozenset(vmap[v] for v in pair)]
        for k, k2 in zip(ks, image):
            _, a, _ = G.edges[k]
            _, c, _ = H.edges[k2]
            if len(pair) == 1 or vmap[a] == c:
                hmap[2 * k], hmap[2 * k + 1] = 2 * k2, 2 * k2 + 1
            else:
                hmap[2 * k], hmap[2 * k + 1] = 2 * k2 + 1, 2 * k2
    base_g, base_h = 2 * G.num_edges, 2 * H.num_edges
    h_index = {label: i for i, (label, _) in enumerate(H.legs)}
    for i, (label, _) in enumerate(G.legs):
        hmap[base_g + i] = base_h + h_index[label]
    return hmap


def canonical_form(G: WeightedGraph) -> CanonicalForm:
    result = _search(G, True)
    C = _graph_from_certificate(result.certificate)
    order = result.leaves[0]
    vmap = {v: f"v{i}" for i, v in enumerate(order)}
    hmap = _lift(G, C, vmap)
    emap = {G.edges[h // 2][0]: C.edges[hmap[h] // 2][0] for h in range(0, 2 * G.num_edges, 2)}
    return CanonicalForm(_encode(result.certificate), C, Relabeling(vmap, emap, hmap))


def canonical_graph(G: WeightedGraph) -> WeightedGraph:
    return _graph_from_certificate(_search(G, True).certificate)


def is_isomorphic(G: WeightedGraph, H: WeightedGraph) -> bool:
    if (G.num_vertices, G.num_edges, G.num_legs) != (H.num_vertices, H.num_edges, H.num_legs):
        return False
    return _search(G, True).certificate == _search(H, True).certificate


def vertex_isomorphisms(G: WeightedGraph, H: WeightedGraph) -> Iterator[dict[Vertex, Vertex]]:
    """Every vertex bijection G -> H that underlies an isomorphism."""
    rg, rh = _search(G, True), _search(H, True)
    if rg.certificate != rh.certificate:
        return
    target = rh.leaves[0]
    for leaf in rg.leaves:
        yield dict(zip(leaf, target))


def isomorphism(G: WeightedGraph, H: WeightedGraph) -> tuple[dict[Vertex, Vertex], dict[EdgeId, EdgeId]] | None:
    """One isomorphism as (vertex map, edge map), or None."""
    vmap = next(vertex_isomorphisms(G, H), None)
    if vmap is None:
        return None
    hmap = _lift(G, H, vmap)
    return vmap, {G.edges[k][0]: H.edges[hmap[2 * k] // 2][0] for k in range(G.num_edges)}


# -- automorphisms -----------------------------------------------------------


@dataclass(frozen=True)
class Permutation:
    """A permutation stored as its moved points ``(x, image)``, sorted."""

    moved: tuple[tuple[Point, Point], ...]

    @classmethod
    def from_mapping(cls, mapping: Mapping[Point, Point]) -> Permutation:
        return cls(tuple(sorted(((x, y) for x, y in mapping.items() if x != y), key=_point_key)))

    def __call__(self, x: Point) -> Point:
        return dict(self.moved).get(x, x)

    def is_identity(self) -> bool:
        return not self.moved

    def cycles(self) -> list[tuple[Point, ...]]:
        images = dict(self.moved)
        seen: set[Point] = set()
        out = []
        for x, _ in self.moved:
            if x in seen:
                continue
            cyc = [x]
            seen.add(x)
            y = images[x]
            while y != x:
                cyc.append(y)
                seen.add(y)
                y = images[y]
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        if not self.moved:
            return "()"
        return "".join("(" + " ".join(_point_name(p) for p in c) + ")" for c in self.cycles())


def _point_key(item: tuple[Point, Point]) -> tuple[int, str | int]:
    x = item[0]
    return (1, x) if isinstance(x, int) else (0, x)


def _point_name(p: Point) -> str:
    return f"h{p}" if isinstance(p, int) else str(p)


@dataclass(frozen=True)
class AutGroup:
    """Automorphisms fixing every leg, acting on vertices and half-edges.

    ``edge_action_*`` describe the image of the group in the symmetric
    group on edges; ``order // edge_action_order`` automorphisms act
    trivially on edges (loop flips, the endpoint swap of a banana).
    """

    order: int
    generators: tuple[Permutation, ...]
    edge_action_order: int
    edge_action_generators: tuple[Permutation, ...]

    @property
    def kernel_order(self) -> int:
        return self.order // self.edge_action_order

    def edge_permutations(self) -> list[Permutation]:
        """All elements of the edge action, by closure of the generators."""
        return _closure(self.edge_action_generators)


def _compose(p: Permutation, q: Permutation) -> Permutation:
    """``p`` after ``q``."""
    points = {x for x, _ in p.moved} | {x for x, _ in q.moved}
    return Permutation.from_mapping({x: p(q(x)) for x in points})


def _closure(gens: tuple[Permutation, ...] | list[Permutation]) -> list[Permutation]:
    ident = Permutation(())
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = _compose(s, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen, key=lambda p: [(_point_name(a), _point_name(b)) for a, b in p.moved])


def vertex_automorphisms(G: WeightedGraph) -> list[dict[Vertex, Vertex]]:
    """The full list of vertex permutations underlying automorphisms."""
    return list(vertex_isomorphisms(G, G))


def automorphism_group(G: WeightedGraph) -> AutGroup:
    vauts = vertex_automorphisms(G)
    classes = _edge_classes(G)

    # vertex-level generators, greedily, lifted to half-edges
    vgens: list[Permutation] = []
    group = {Permutation(())}
    for a in vauts:
        p = Permutation.from_mapping(a)
        if p not in group:
            vgens.append(p)
            group = set(_closure(vgens))
    gens = []
    for p in vgens:
        vmap = {v: p(v) for v in G.vertex_ids}
        full: dict[Point, Point] = dict(vmap)
        full.update(_lift(G, G, vmap))
        gens.append(Permutation.from_mapping(full))

    # half-edge moves over a fixed vertex map
    n_loops = 0
    kernel_factor = 1
    for pair, ks in classes.items():
        loop = len(pair) == 1
        kernel_factor *= math.factorial(len(ks)) * (2 ** len(ks) if loop else 1)
        if loop:
            n_loops += len(ks)
            for k in ks:
                gens.append(Permutation.from_mapping({2 * k: 2 * k + 1, 2 * k + 1: 2 * k}))
        for k, k2 in zip(ks, ks[1:]):
            # parallel edges may be declared with opposite orientations
            flip = 0 if loop or G.edges[k][1] == G.edges[k2][1] else 1
            gens.append(Permutation.from_mapping({
                2 * k: 2 * k2 + flip, 2 * k2 + flip: 2 * k,
                2 * k + 1: 2 * k2 + 1 - flip, 2 * k2 + 1 - flip: 2 * k + 1,
            }))
    order = len(vauts) * kernel_factor

    # automorphisms acting trivially on edges: vertex maps that fix loop
    # vertices and every non-loop endpoint pair, times loop flips
    def trivial_on_edges(a: Mapping[Vertex, Vertex]) -> bool:
        return all(frozenset(a[v] for v in pair) == pair for pair in classes)

    kernel = sum(1 for a in vauts if trivial_on_edges(a)) * 2**n_loops
    edge_gens = []
    for p in gens:
        emap = {G.edges[k][0]: G.edges[p(2 * k) // 2][0] for k in range(G.num_edges)}
        q = Permutation.from_mapping(emap)
        if not q.is_identity() and q not in edge_gens:
            edge_gens.append(q)
    return AutGroup(order, tuple(gens), order // kernel, tuple(edge_gens))


def canonical_orderings(G: WeightedGraph) -> tuple[bytes, tuple[tuple[Vertex, ...], ...]]:
    """The canonical key and every vertex ordering that realizes it.

    Two orderings differ by a vertex automorphism, so decorations such as edge
    lengths can be made canonical by minimizing over this list.
    """
    result = _search(G, True)
    return _encode(result.certificate), result.leaves
