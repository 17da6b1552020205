"""Brute-force reference implementations used to check the fast algorithms.

Nothing here calls the canonical search: isomorphism, automorphisms,
isometry and the enumeration of stable types are all done by exhaustive
search over vertex permutations and edge bijections.  Only usable on tiny
graphs.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import combinations_with_replacement, permutations, product

from tropmod.graph import WeightedGraph


def _pair(a, b):
    return (a, b) if a <= b else (b, a)


def _encode(G: WeightedGraph, order) -> tuple:
    """Structure of ``G`` read with vertex ``order[i]`` renamed to ``i``."""
    pos = {v: i for i, v in enumerate(order)}
    weights = tuple(G.weight(v) for v in order)
    legs = tuple(sorted((i, pos[v]) for i, v in G.legs))
    edges = tuple(sorted(_pair(pos[a], pos[b]) for _, a, b in G.edges))
    return weights, legs, edges


def brute_key(G: WeightedGraph) -> tuple:
    """Least encoding over every vertex ordering: a complete isomorphism invariant."""
    return min(_encode(G, order) for order in permutations(G.vertex_ids))


def brute_isomorphic(G: WeightedGraph, H: WeightedGraph) -> bool:
    if (G.num_vertices, G.num_edges, G.num_legs) != (H.num_vertices, H.num_edges, H.num_legs):
        return False
    target = _encode(H, H.vertex_ids)
    return any(_encode(G, order) == target for order in permutations(G.vertex_ids))


def _edge_bijections(G: WeightedGraph, vmap: dict, H: WeightedGraph, weight=None):
    """Every bijection E(G) -> E(H) carrying ends to ends under ``vmap`` (and ``weight`` to ``weight``)."""
    src = list(G.edges)
    used: set = set()
    out: dict = {}

    def rec(k: int):
        if k == len(src):
            yield dict(out)
            return
        e, a, b = src[k]
        want = _pair(vmap[a], vmap[b])
        for f, c, d in H.edges:
            if f in used or _pair(c, d) != want:
                continue
            if weight is not None and weight[0][e] != weight[1][f]:
                continue
            used.add(f)
            out[e] = f
            yield from rec(k + 1)
            used.discard(f)
            del out[e]

    yield from rec(0)


def _vertex_maps(G: WeightedGraph, H: WeightedGraph):
    if G.num_vertices != H.num_vertices:
        return
    for image in permutations(H.vertex_ids):
        vmap = dict(zip(G.vertex_ids, image))
        if any(G.weight(v) != H.weight(vmap[v]) for v in G.vertex_ids):
            continue
        if any(vmap[v] != H.leg_map.get(i) for i, v in G.legs):
            continue
        yield vmap


def brute_aut(G: WeightedGraph) -> tuple[int, int]:
    """(|Aut|, order of the edge action), counting maps of V and every half-edge.

    For each compatible pair (vertex map, edge bijection), the half-edge map
    is forced on a non-loop edge and has two choices on a loop.
    """
    loops = sum(1 for e, a, b in G.edges if a == b)
    total = 0
    edge_actions = set()
    for vmap in _vertex_maps(G, G):
        for emap in _edge_bijections(G, vmap, G):
            total += 2 ** loops
            edge_actions.add(tuple(sorted(emap.items())))
    return total, len(edge_actions)


def brute_isometric(G: WeightedGraph, lg: dict, H: WeightedGraph, lh: dict) -> bool:
    """Some isomorphism of legged weighted graphs matches lengths exactly."""
    if (G.num_edges, G.num_legs) != (H.num_edges, H.num_legs):
        return False
    for vmap in _vertex_maps(G, H):
        for _ in _edge_bijections(G, vmap, H, (lg, lh)):
            return True
    return False


def _connected(nv: int, edges) -> bool:
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for a, b in edges:
            for s, t in ((a, b), (b, a)):
                if s == x and t not in seen:
                    seen.add(t)
                    stack.append(t)
    return len(seen) == nv


def brute_stable_types(g: int, n: int) -> dict[tuple, WeightedGraph]:
    """Every stable weighted graph of genus ``g`` with legs ``1..n``, one per isomorphism class.

    Exhausts vertex counts, weight vectors, leg placements and edge
    multisets (loops allowed), keeping connected stable ones.  A stable
    graph has at most ``2g - 2 + n`` vertices, since each vertex contributes
    a positive amount to ``sum(2w - 2 + val) = 2g - 2 + n``.
    """
    found: dict[tuple, WeightedGraph] = {}
    for nv in range(1, 2 * g - 2 + n + 1):
        pairs = [(a, b) for a in range(nv) for b in range(a, nv)]
        for weights in product(range(g + 1), repeat=nv):
            b1 = g - sum(weights)
            if b1 < 0:
                continue
            ne = b1 + nv - 1
            for placement in product(range(nv), repeat=n):
                legs = {i + 1: v for i, v in enumerate(placement)}
                for edges in combinations_with_replacement(pairs, ne):
                    if not _connected(nv, edges):
                        continue
                    val = Counter(placement)
                    for a, b in edges:
                        val[a] += 1
                        val[b] += 1
                    if any(2 * weights[v] - 2 + val[v] <= 0 for v in range(nv)):
                        continue
                    G = WeightedGraph.build(list(weights), list(edges), legs)
                    found.setdefault(brute_key(G), G)
    return found


def brute_fiber_coords(base: WeightedGraph, coords: dict, face_isometric) -> set[tuple]:
    """Coordinate vectors (in ``base.edge_ids`` order) of the cone points equivalent to ``coords``.

    An equivalent point has the same multiset of coordinates, because
    contraction keeps the surviving edge lengths; so it suffices to test
    every rearrangement with ``face_isometric``.
    """
    values = [Fraction(coords[e]) for e in base.edge_ids]
    out = set()
    for perm in set(permutations(values)):
        if face_isometric(dict(zip(base.edge_ids, perm))):
            out.add(perm)
    return out
