"""Exhaustive enumeration of stable types for a signature (g, n) and their contraction poset."""

from __future__ import annotations

import os
import random
from collections import deque
from collections.abc import Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

from .canonical import canonical_form, canonical_graph, canonical_key
from .contraction import covers
from .errors import NoPath, NotTrivalent, TropmodError
from .graph import EdgeId, WeightedGraph, is_maximal_type, require_hyperbolic, signature


class SignatureMismatch(TropmodError, ValueError):
    pass


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("TROPMOD_WORKERS", "1")))
    except ValueError:
        return 1


# -- 3-regular graphs ------------------------------------------------------------


def _leg_placements(n: int, nv: int) -> Iterator[tuple[int, ...]]:
    """Vertex of each leg, up to renaming vertices (restricted growth), at most 3 per vertex."""

    def rec(prefix: list[int], load: list[int]) -> Iterator[tuple[int, ...]]:
        if len(prefix) == n:
            yield tuple(prefix)
            return
        top = max(prefix, default=-1)
        for v in range(min(top + 2, nv)):
            if load[v] < 3:
                load[v] += 1
                prefix.append(v)
                yield from rec(prefix, load)
                prefix.pop()
                load[v] -= 1

    yield from rec([], [0] * nv)


def _pairings(free: list[int]) -> Iterator[list[tuple[int, int]]]:
    """Perfect pairings of half-edge slots, ``free[v]`` slots at vertex ``v``.

    Slots at one vertex are interchangeable, so the first open slot is
    paired with a vertex rather than with a specific slot.
    """
    free = list(free)
    edges: list[tuple[int, int]] = []

    def rec() -> Iterator[list[tuple[int, int]]]:
        a = next((v for v, k in enumerate(free) if k), None)
        if a is None:
            yield list(edges)
            return
        free[a] -= 1
        for b in range(a, len(free)):
            if free[b]:
                free[b] -= 1
                edges.append((a, b))
                yield from rec()
                edges.pop()
                free[b] += 1
        free[a] += 1

    yield from rec()


def _trivalent_candidates(g: int, n: int) -> Iterator[tuple[tuple[int, ...], tuple[tuple[int, int], ...]]]:
    nv = 2 * g - 2 + n
    for placement in _leg_placements(n, nv):
        free = [3] * nv
        for v in placement:
            free[v] -= 1
        for edges in _pairings(free):
            yield placement, tuple(edges)


def _canonical_candidate(args: tuple[int, tuple[int, ...], tuple[tuple[int, int], ...]]) -> tuple[bytes, WeightedGraph] | None:
    nv, placement, edges = args
    G = WeightedGraph.build(
        [0] * nv, edges, {i + 1: v for i, v in enumerate(placement)}, allow_disconnected=True
    )
    if len(G.components()) != 1:
        return None
    G = WeightedGraph(G.vertices, G.edges, G.legs)
    return canonical_key(G), canonical_graph(G)


def enumerate_trivalent(g: int, n: int, *, seed: int | None = None) -> list[WeightedGraph]:
    """All connected 3-regular weight-zero graphs of genus ``g`` with legs ``1..n``.

    Graphs are canonical representatives sorted by canonical key.  ``seed``
    only shuffles the processing order, which never changes the result.
    """
    require_hyperbolic(g, n)
    nv = 2 * g - 2 + n
    jobs = [(nv, placement, edges) for placement, edges in _trivalent_candidates(g, n)]
    if seed is not None:
        random.Random(seed).shuffle(jobs)
    workers = _workers()
    if workers > 1 and len(jobs) > 256:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_canonical_candidate, jobs, chunksize=64))
    else:
        results = [_canonical_candidate(job) for job in jobs]
    found = dict(r for r in results if r is not None)
    return [found[k] for k in sorted(found)]


# -- the poset -------------------------------------------------------------------


@dataclass(frozen=True)
class Node:
    key: bytes
    graph: WeightedGraph

    @property
    def num_edges(self) -> int:
        return self.graph.num_edges


@dataclass(frozen=True)
class CoverEdge:
    """``lower`` is obtained from ``upper`` by contracting any one of ``edges``."""

    upper: int
    lower: int
    edges: tuple[EdgeId, ...]

    @property
    def multiplicity(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class StrataPoset:
    g: int
    n: int
    nodes: tuple[Node, ...]  # sorted by (|E|, key)
    cover_edges: tuple[CoverEdge, ...]

    @property
    def top_dimension(self) -> int:
        return 3 * self.g - 3 + self.n

    def index(self, G: WeightedGraph) -> int:
        key = canonical_key(G)
        for i, node in enumerate(self.nodes):
            if node.key == key:
                return i
        raise KeyError("graph is not a node of this poset")

    def maximal(self) -> list[int]:
        return [i for i, nd in enumerate(self.nodes) if nd.num_edges == self.top_dimension]

    def covers_of(self, i: int) -> list[CoverEdge]:
        return [c for c in self.cover_edges if c.upper == i]

    def below(self, i: int) -> set[int]:
        """Everything reachable from node ``i`` by contractions, ``i`` included."""
        seen = {i}
        stack = [i]
        while stack:
            j = stack.pop()
            for c in self.covers_of(j):
                if c.lower not in seen:
                    seen.add(c.lower)
                    stack.append(c.lower)
        return seen


def enumerate_all(g: int, n: int, *, seed: int | None = None) -> StrataPoset:
    """Every stable type of signature (g, n), closed downward from the 3-regular ones."""
    require_hyperbolic(g, n)
    return _enumerate_all(g, n) if seed is None else _build_poset(g, n, seed)


@lru_cache(maxsize=None)
def _enumerate_all(g: int, n: int) -> StrataPoset:
    return _build_poset(g, n, None)


def _build_poset(g: int, n: int, seed: int | None) -> StrataPoset:
    graphs: dict[bytes, WeightedGraph] = {}
    raw_covers: list[tuple[bytes, bytes, tuple[EdgeId, ...]]] = []
    queue = deque()
    for G in enumerate_trivalent(g, n, seed=seed):
        key = canonical_key(G)
        graphs[key] = G
        queue.append(key)
    while queue:
        key = queue.popleft()
        for c in covers(graphs[key]):
            raw_covers.append((key, c.form.key, c.edges))
            if c.form.key not in graphs:
                graphs[c.form.key] = c.form.graph
                queue.append(c.form.key)
    order = sorted(graphs, key=lambda k: (graphs[k].num_edges, k))
    idx = {k: i for i, k in enumerate(order)}
    nodes = tuple(Node(k, graphs[k]) for k in order)
    edges = tuple(sorted((CoverEdge(idx[a], idx[b], es) for a, b, es in raw_covers), key=lambda c: (c.upper, c.lower)))
    return StrataPoset(g, n, nodes, edges)


def f_vector(P: StrataPoset) -> list[int]:
    counts = [0] * (P.top_dimension + 1)
    for node in P.nodes:
        counts[node.num_edges] += 1
    return counts


def shape_vector(P: StrataPoset) -> list[int]:
    """Like :func:`f_vector` but with legs unlabeled, for comparison with drawings."""
    shapes = [set() for _ in range(P.top_dimension + 1)]
    for node in P.nodes:
        shapes[node.num_edges].add(canonical_key(node.graph, labeled_legs=False))
    return [len(s) for s in shapes]


def codim1_connected(P: StrataPoset) -> bool:
    """Whether the union of strata of codimension at most one is connected.

    Maximal nodes are linked through the codimension-one nodes they both
    contract to.
    """
    top = P.top_dimension
    keep = {i for i, nd in enumerate(P.nodes) if nd.num_edges >= top - 1}
    adj: dict[int, set[int]] = {i: set() for i in keep}
    for c in P.cover_edges:
        if c.upper in keep and c.lower in keep:
            adj[c.upper].add(c.lower)
            adj[c.lower].add(c.upper)
    if not keep:
        return True
    start = min(keep)
    seen = {start}
    stack = [start]
    while stack:
        for j in adj[stack.pop()]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return seen == keep


@dataclass(frozen=True)
class ZigZagStep:
    """One arrow of a zig-zag: ``upper`` contracts ``edge`` (never a loop) onto ``lower``.

    ``direction`` is ``"down"`` when the path moves from ``upper`` to
    ``lower`` and ``"up"`` when it climbs from ``lower`` to ``upper``.
    """

    direction: str
    upper: WeightedGraph
    edge: EdgeId
    lower: WeightedGraph


def _non_loop(G: WeightedGraph, edges: tuple[EdgeId, ...]) -> EdgeId | None:
    return next((e for e in edges if not G.is_loop(e)), None)


def ht_path(A: WeightedGraph, B: WeightedGraph, P: StrataPoset | None = None) -> list[ZigZagStep]:
    """A zig-zag of single non-loop contractions joining two 3-regular weight-zero types.

    The path alternates down/up steps; every graph at the top of a step is
    3-regular.  The first step starts from ``A`` itself and the last one ends
    at ``B`` itself; intermediate graphs are canonical representatives.
    """
    for G, name in ((A, "A"), (B, "B")):
        if not is_maximal_type(G):
            raise NotTrivalent(f"{name} is not 3-regular with zero weights")
    if signature(A) != signature(B):
        raise SignatureMismatch(f"signatures differ: {signature(A)} vs {signature(B)}")
    g, n = signature(A)
    if P is None:
        P = enumerate_all(g, n)
    a, b = P.index(A), P.index(B)
    if a == b:
        return []

    top = P.top_dimension
    # maximal node -> [(codim-1 node, non-loop edge)]
    down: dict[int, list[tuple[int, EdgeId]]] = {i: [] for i in P.maximal()}
    for c in P.cover_edges:
        if c.upper in down and P.nodes[c.lower].num_edges == top - 1:
            e = _non_loop(P.nodes[c.upper].graph, c.edges)
            if e is not None:
                down[c.upper].append((c.lower, e))
    up: dict[int, list[tuple[int, EdgeId]]] = {}
    for i, lst in down.items():
        for lower, e in lst:
            up.setdefault(lower, []).append((i, e))

    prev: dict[int, tuple[int, int, EdgeId, EdgeId]] = {a: (-1, -1, "", "")}
    queue = deque([a])
    while queue and b not in prev:
        i = queue.popleft()
        for lower, e in down[i]:
            for j, e2 in up[lower]:
                if j not in prev:
                    prev[j] = (i, lower, e, e2)
                    queue.append(j)
    if b not in prev:
        raise NoPath(f"no zig-zag between nodes {a} and {b}")

    hops = []
    j = b
    while j != a:
        i, lower, e, e2 = prev[j]
        hops.append((i, lower, e, e2, j))
        j = i
    hops.reverse()

    steps = []
    for i, lower, e, e2, j in hops:
        steps.append(ZigZagStep("down", P.nodes[i].graph, e, P.nodes[lower].graph))
        steps.append(ZigZagStep("up", P.nodes[j].graph, e2, P.nodes[lower].graph))
    # express the end points in the caller's own ids
    back_a = {c: o for o, c in canonical_form(A).relabeling.edges.items()}
    back_b = {c: o for o, c in canonical_form(B).relabeling.edges.items()}
    first, last = steps[0], steps[-1]
    steps[0] = ZigZagStep("down", A, back_a[first.edge], first.lower)
    steps[-1] = ZigZagStep("up", B, back_b[last.edge], last.lower)
    return steps
