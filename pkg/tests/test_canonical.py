from __future__ import annotations

import random
from math import factorial

import pytest
from conftest import banana, dumbbell, graphs, loop_vertex, random_graph, shuffled, theta
from hypothesis import given
from hypothesis import strategies as st
from oracles import brute_aut, brute_isomorphic, brute_key

from tropmod.canonical import (
    automorphism_group,
    canonical_form,
    canonical_key,
    is_isomorphic,
    isomorphism,
)
from tropmod.graph import WeightedGraph


def test_theta_key_ignores_ids(rng):
    assert canonical_key(theta()) == canonical_key(shuffled(theta(), rng))


def test_four_point_splits_differ():
    a = WeightedGraph.build([0, 0], [(0, 1)], {1: 0, 2: 0, 3: 1, 4: 1})
    b = WeightedGraph.build([0, 0], [(0, 1)], {1: 0, 3: 0, 2: 1, 4: 1})
    assert canonical_key(a) != canonical_key(b)


def test_banana_weights_swap():
    assert canonical_key(banana(2, (1, 0))) == canonical_key(banana(2, (0, 1)))


def test_iso_examples():
    assert is_isomorphic(dumbbell(), dumbbell())
    assert not is_isomorphic(theta(), dumbbell())
    assert not brute_isomorphic(theta(), dumbbell())
    assert not is_isomorphic(loop_vertex(legs=1), WeightedGraph.build([1], [], {1: 0}))


def test_key_sees_leg_labels_weights_loops():
    base = WeightedGraph.build([0, 0], [(0, 1), (1, 1)], {1: 0, 2: 0})
    assert canonical_key(base) != canonical_key(WeightedGraph.build([0, 0], [(0, 1), (1, 1)], {1: 0, 2: 1}))
    assert canonical_key(base) != canonical_key(WeightedGraph.build([1, 0], [(0, 1), (1, 1)], {1: 0, 2: 0}))
    assert canonical_key(base) != canonical_key(WeightedGraph.build([0, 0], [(0, 1), (0, 1)], {1: 0, 2: 0}))


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_banana_automorphisms(m):
    A = automorphism_group(banana(m))
    assert A.order == 2 * factorial(m)
    assert A.edge_action_order == factorial(m)
    assert A.kernel_order == 2


def test_loop_inversion():
    A = automorphism_group(loop_vertex())
    assert (A.order, A.edge_action_order) == (2, 1)
    assert str(A.generators[0]) == "(h0 h1)"


def test_dumbbell_automorphisms():
    A = automorphism_group(dumbbell())
    assert (A.order, A.edge_action_order) == brute_aut(dumbbell()) == (8, 2)


def test_theta_automorphisms():
    A = automorphism_group(theta())
    assert (A.order, A.edge_action_order) == brute_aut(theta()) == (12, 6)


def test_canonical_form_idempotent(rng):
    for _ in range(50):
        G = random_graph(rng)
        cf = canonical_form(G)
        assert canonical_form(cf.graph).graph == cf.graph
        assert cf.graph == canonical_form(shuffled(G, rng)).graph


def test_relabeling_is_an_isomorphism(rng):
    for _ in range(50):
        G = random_graph(rng)
        cf = canonical_form(G)
        H = cf.graph
        vmap, emap = cf.relabeling.vertices, cf.relabeling.edges
        assert all(H.weight(vmap[v]) == w for v, w in G.vertices)
        assert all(H.leg_map[i] == vmap[v] for i, v in G.legs)
        for e, a, b in G.edges:
            assert set(H.ends(emap[e])) == {vmap[a], vmap[b]}


def test_isomorphism_witness(rng):
    for _ in range(30):
        G = random_graph(rng)
        H = shuffled(G, rng)
        vmap, emap = isomorphism(G, H)
        for e, a, b in G.edges:
            assert set(H.ends(emap[e])) == {vmap[a], vmap[b]}
    assert isomorphism(theta(), dumbbell()) is None


@given(graphs(), graphs())
def test_key_equality_matches_brute_force(G, H):
    assert (canonical_key(G) == canonical_key(H)) == (brute_key(G) == brute_key(H))


@given(graphs(), st.integers(0, 10**6))
def test_key_invariant_under_relabeling(G, seed):
    assert canonical_key(shuffled(G, random.Random(seed))) == canonical_key(G)


@given(graphs())
def test_aut_order_matches_brute_force(G):
    A = automorphism_group(G)
    assert (A.order, A.edge_action_order) == brute_aut(G)
    assert A.order % A.edge_action_order == 0


@given(graphs())
def test_generators_respect_structure(G):
    A = automorphism_group(G)
    hs = G.half_edges
    for p in A.generators:
        for h in hs:
            q = hs[p(h.id)]
            assert q.endpoint == p(h.endpoint)
            assert p(h.partner) == q.partner
            if h.is_leg:
                assert q.id == h.id
        assert all(G.weight(p(v)) == G.weight(v) for v in G.vertex_ids)


@given(graphs(max_vertices=3, max_edges=5))
def test_kernel_counts_loop_flips(G):
    A = automorphism_group(G)
    loops = sum(G.is_loop(e) for e in G.edge_ids)
    assert A.kernel_order % (2 ** loops) == 0
