from __future__ import annotations

import pytest
from conftest import dumbbell, graphs, loop_vertex, stable_graphs, theta
from hypothesis import given

from tropmod.errors import (
    BadLegLabels,
    DanglingEndpoint,
    Disconnected,
    DuplicateLegLabel,
    NegativeWeight,
    ParseError,
    UnknownVertex,
)
from tropmod.graph import (
    WeightedGraph,
    check_stable,
    first_betti,
    genus,
    is_maximal_type,
    is_trivalent,
    stability_degree,
    to_json,
    validate,
    valence,
)


def test_smallest_stable_graph():
    G = validate({"vertices": [{"id": "v", "weight": 0}], "legs": [{"label": i, "vertex": "v"} for i in (1, 2, 3)]})
    assert valence(G, "v") == 3
    assert check_stable(G).stable


def test_theta_invariants():
    G = theta()
    assert valence(G, "v0") == valence(G, "v1") == 3
    assert first_betti(G) == 2
    assert genus(G) == 2
    assert check_stable(G).stable


def test_loop_counts_twice():
    G = loop_vertex(legs=1)
    assert valence(G, "v0") == 3


def test_one_edge_four_point_graph():
    G = WeightedGraph.build([0, 0], [(0, 1)], {1: 0, 2: 0, 3: 1, 4: 1})
    assert valence(G, "v0") == 3
    assert check_stable(G).stable


@pytest.mark.parametrize(
    "G, b1",
    [
        (theta(), 2),
        (WeightedGraph.build([0, 0, 0], [(0, 1), (1, 2)], {1: 0, 2: 0, 3: 1, 4: 2, 5: 2}), 0),
        (WeightedGraph.build([0], [(0, 0), (0, 0)], {}), 2),
    ],
)
def test_first_betti(G, b1):
    assert first_betti(G) == b1


@pytest.mark.parametrize(
    "G, g",
    [(theta(), 2), (WeightedGraph.build([2], [], {}), 2), (loop_vertex(weight=1), 2)],
)
def test_genus(G, g):
    assert genus(G) == g


def test_stability_degree_examples():
    assert stability_degree(WeightedGraph.build([0], [], {1: 0, 2: 0, 3: 0}), "v0") == 1
    assert stability_degree(WeightedGraph.build([1], [], {}), "v0") == 0
    assert stability_degree(WeightedGraph.build([0], [], {1: 0, 2: 0}), "v0") == 0


def test_isolated_weight_one_vertex_is_unstable():
    report = check_stable(WeightedGraph.build([1], [], {}))
    assert not report.stable
    assert report.offending == (("v0", 1, 0),)


def test_zero_edge_four_point_graph_is_stable():
    assert check_stable(WeightedGraph.build([0], [], {i: 0 for i in range(1, 5)})).stable


def test_half_edges():
    G = WeightedGraph.build([0, 0], [(0, 1), (1, 1)], {1: 0, 2: 0})
    hs = G.half_edges
    assert len(hs) == 2 * G.num_edges + G.num_legs
    assert [h.id for h in hs] == list(range(len(hs)))
    for h in hs:
        assert hs[h.partner].partner == h.id
        assert (h.leg_label is not None) == h.is_leg
    assert G.edge_of_half_edge(2) == "e1"
    assert G.edge_of_half_edge(4) is None


def test_unknown_vertex():
    with pytest.raises(UnknownVertex):
        valence(theta(), "nope")


@pytest.mark.parametrize(
    "raw, exc",
    [
        ({"vertices": [{"id": "v"}], "legs": [{"label": 1, "vertex": "v"}, {"label": 1, "vertex": "v"}]}, DuplicateLegLabel),
        ({"vertices": [{"id": "v"}], "legs": [{"label": 2, "vertex": "v"}]}, BadLegLabels),
        ({"vertices": [{"id": "a"}, {"id": "b"}]}, Disconnected),
        ({"vertices": [{"id": "a", "weight": -1}]}, NegativeWeight),
        ({"vertices": [{"id": "a"}], "edges": [{"ends": ["a", "b"]}]}, DanglingEndpoint),
        ({"vertices": [{"id": "a"}], "legs": [{"label": 1, "vertex": "z"}]}, DanglingEndpoint),
        ({"edges": []}, ParseError),
        ({"vertices": [{"id": "a", "weight": "1"}]}, ParseError),
        ({"vertices": [{"id": "a"}], "edges": [{"ends": ["a"]}]}, ParseError),
        ([], ParseError),
    ],
)
def test_validation_errors(raw, exc):
    with pytest.raises(exc):
        validate(raw)


def test_parse_error_names_field():
    with pytest.raises(ParseError) as info:
        validate({"vertices": [{"id": "a"}], "edges": [{"ends": "a"}]})
    assert info.value.field == "edges[0].ends"


def test_disconnected_allowed_internally():
    G = WeightedGraph.build([0, 0], [], {}, allow_disconnected=True)
    assert len(G.components()) == 2
    assert first_betti(G) == 0


def test_json_round_trip():
    G = dumbbell()
    assert validate(to_json(G)) == G


def test_trivalent_predicates():
    assert is_trivalent(theta()) and is_maximal_type(theta())
    assert is_trivalent(theta((1, 0))) and not is_maximal_type(theta((1, 0)))
    assert not is_trivalent(loop_vertex())


@given(graphs())
def test_handshake(G):
    assert sum(valence(G, v) for v in G.vertex_ids) == 2 * G.num_edges + G.num_legs


@given(graphs())
def test_involution(G):
    hs = G.half_edges
    assert len(hs) == 2 * G.num_edges + G.num_legs
    assert all(hs[hs[h.id].partner].partner == h.id for h in hs)
    assert sum(1 for h in hs if h.is_leg) == G.num_legs


@given(graphs(max_weight=3))
def test_stability_matches_case_condition(G):
    by_cases = all(
        (w != 0 or valence(G, v) >= 3) and (w != 1 or valence(G, v) >= 1) for v, w in G.vertices
    )
    assert check_stable(G).stable == by_cases
    assert check_stable(G).stable == (not check_stable(G).offending)


@given(stable_graphs())
def test_edge_bound_for_stable_graphs(G):
    g, n = genus(G), G.num_legs
    assert G.num_edges <= 3 * g - 3 + n
    assert (G.num_edges == 3 * g - 3 + n) == is_maximal_type(G)
    if is_maximal_type(G):
        assert G.num_vertices == 2 * g - 2 + n


@given(graphs())
def test_json_round_trip_property(G):
    assert validate(to_json(G)) == G
