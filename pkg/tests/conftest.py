from __future__ import annotations

import random
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from tropmod.graph import WeightedGraph, check_stable  # noqa: E402

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def theta(weights=(0, 0)) -> WeightedGraph:
    return WeightedGraph.build(list(weights), [(0, 1)] * 3, {})


def dumbbell() -> WeightedGraph:
    return WeightedGraph.build([0, 0], [(0, 0), (0, 1), (1, 1)], {})


def banana(m: int, weights=(0, 0)) -> WeightedGraph:
    return WeightedGraph.build(list(weights), [(0, 1)] * m, {})


def loop_vertex(legs: int = 0, weight: int = 0) -> WeightedGraph:
    return WeightedGraph.build([weight], [(0, 0)], {i: 0 for i in range(1, legs + 1)})


def random_graph(rng: random.Random, max_vertices=5, max_edges=6, max_weight=2, max_legs=4) -> WeightedGraph:
    """A connected weighted multigraph: a random spanning tree plus extra edges and loops."""
    nv = rng.randint(1, max_vertices)
    edges = [(rng.randrange(v), v) for v in range(1, nv)]
    extra = rng.randint(0, max(0, max_edges - len(edges)))
    for _ in range(extra):
        edges.append((rng.randrange(nv), rng.randrange(nv)))
    rng.shuffle(edges)
    weights = [rng.randint(0, max_weight) for _ in range(nv)]
    legs = {i: rng.randrange(nv) for i in range(1, rng.randint(0, max_legs) + 1)}
    return WeightedGraph.build(weights, edges, legs)


def shuffled(G: WeightedGraph, rng: random.Random) -> WeightedGraph:
    """The same graph with fresh vertex and edge ids and a different declaration order."""
    vnames = {v: f"x{i}" for i, v in enumerate(rng.sample(G.vertex_ids, G.num_vertices))}
    vertices = [(vnames[v], w) for v, w in G.vertices]
    rng.shuffle(vertices)
    edges = [(f"f{i}",) + ((vnames[a], vnames[b]) if rng.random() < 0.5 else (vnames[b], vnames[a]))
             for i, (_, a, b) in enumerate(rng.sample(G.edges, G.num_edges))]
    legs = [(i, vnames[v]) for i, v in G.legs]
    return WeightedGraph(tuple(vertices), tuple(edges), tuple(legs))


def random_stable_graph(rng: random.Random, **kw) -> WeightedGraph:
    while True:
        G = random_graph(rng, **kw)
        if check_stable(G).stable:
            return G


@st.composite
def graphs(draw, max_vertices=5, max_edges=6, max_weight=2, max_legs=4):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_graph(random.Random(seed), max_vertices, max_edges, max_weight, max_legs)


@st.composite
def stable_graphs(draw, **kw):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_stable_graph(random.Random(seed), **kw)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240601)


def random_curve(rng: random.Random, *, extended: bool = False, max_weight: int = 1, **kw):
    """A random tropical curve of hyperbolic signature, usually far from stable."""
    from fractions import Fraction

    from tropmod.graph import genus
    from tropmod.metric import INF, TropicalCurve, _leaf_edges

    while True:
        G = random_graph(rng, max_weight=max_weight, **kw)
        if 2 * genus(G) - 2 + G.num_legs < 1:
            continue
        leaves = _leaf_edges(G)
        lengths = {}
        for e in G.edge_ids:
            if e in leaves or (extended and rng.random() < 0.15):
                lengths[e] = INF
            else:
                lengths[e] = Fraction(rng.randint(1, 6), rng.randint(1, 3))
        return TropicalCurve(G, lengths, extended)


def nodal_description(G):
    """The nodal curve whose dual graph is ``G``."""
    from tropmod.dual import NodalCurveDesc

    return NodalCurveDesc(G.vertices, tuple((a, b) for _, a, b in G.edges), G.legs)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = module.summary_lines() if module is not None else []
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
