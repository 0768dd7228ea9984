import pytest

from drsplit.graphs import (StableGraph, UnstableError, automorphism_count, automorphisms,
                            canonical_form, enumerate_stable_graphs, glue_loop, stable_graphs,
                            trivial_graph)

# Numbers of boundary strata by codimension, from the literature on
# Mbar_{0,6} and Mbar_2, and by hand for Mbar_{1,2}.
STRATA_COUNTS = {
    (0, 6): [1, 25, 105, 105],
    (2, 0): [1, 2, 2, 2],
    (1, 2): [1, 2, 2],
    (0, 4): [1, 3],
    (1, 1): [1, 1],
}


@pytest.mark.parametrize("gn,counts", sorted(STRATA_COUNTS.items()))
def test_strata_counts(gn, counts):
    g, n = gn
    assert [len(stable_graphs(g, n, e)) for e in range(len(counts))] == counts


def test_trivial_enumeration():
    assert enumerate_stable_graphs(0, 3, 0) == [trivial_graph(0, 3)]


def test_zero_four_one_edge_partitions():
    graphs = enumerate_stable_graphs(0, 4, 1)
    parts = {frozenset(frozenset(h for h in hs if h <= 4) for hs in G.legs) for G in graphs}
    assert parts == {frozenset({frozenset({1, 2}), frozenset({3, 4})}),
                     frozenset({frozenset({1, 3}), frozenset({2, 4})}),
                     frozenset({frozenset({1, 4}), frozenset({2, 3})})}


def test_one_one_single_edge_is_loop():
    (G,) = enumerate_stable_graphs(1, 1, 1)
    assert G.num_vertices == 1 and G.genera == (0,)


def test_unstable_rejected():
    with pytest.raises(UnstableError):
        enumerate_stable_graphs(0, 2, 0)
    with pytest.raises(UnstableError):
        StableGraph.build((0, 1), ((1, 3), (4,)), ((3, 4),))


def test_validate_rejects_bad_graphs():
    with pytest.raises(ValueError):
        StableGraph.build((0,), ((1, 2, 4),))  # legs not 1..n
    with pytest.raises(ValueError):
        StableGraph.build((0, 0), ((1, 2, 3), (4, 5, 6)))  # disconnected


def test_deterministic_order():
    assert stable_graphs(1, 3, 2) == tuple(sorted(stable_graphs(1, 3, 2)))


def test_genus_bookkeeping():
    for e in range(4):
        for G in stable_graphs(1, 3, e):
            assert G.genus == 1 and G.n == 3
            assert G.h1 == G.num_edges - G.num_vertices + 1


def banana(weights_legs=((1, 3), (2, 4))):
    (l1, l2) = weights_legs
    return StableGraph.build((0, 0), (l1 + (5, 7), l2 + (6, 8)), ((5, 6), (7, 8)))


def test_aut_banana_equal_weights():
    G = banana()
    assert automorphism_count(G, {5: 3, 7: 3}) == 2


def test_aut_banana_unequal_weights():
    assert automorphism_count(banana(), {5: 1, 7: 2}) == 1


def test_aut_loop():
    G = StableGraph.build((0,), ((1, 2, 3),), ((2, 3),))
    assert automorphism_count(G) == 2


def test_aut_two_loops_on_a_vertex():
    # two loops: swap them (2) and flip each (2 * 2)
    G = StableGraph.build((0,), ((1, 2, 3, 4, 5),), ((2, 3), (4, 5)))
    assert automorphism_count(G) == 8
    assert len(automorphisms(G)) == 8


def test_automorphism_list_matches_count():
    for g, n in [(2, 1), (1, 4), (0, 6), (3, 0)]:
        for e in range(3 * g - 3 + n + 1):
            for G in stable_graphs(g, n, e):
                assert len(automorphisms(G)) == automorphism_count(G)


def test_canonical_idempotent():
    for G in stable_graphs(2, 2, 3):
        cf = canonical_form(G).graph
        assert canonical_form(cf).graph == cf


def test_banana_edge_order_irrelevant():
    G1 = StableGraph((0, 0), ((1, 3, 5, 7), (2, 4, 6, 8)), ((5, 6), (7, 8)))
    G2 = StableGraph((0, 0), ((1, 3, 5, 7), (2, 4, 6, 8)), ((7, 8), (5, 6)))
    c1 = canonical_form(G1, {5: 1, 7: 2})
    c2 = canonical_form(G2, {7: 1, 5: 2})
    assert c1.graph == c2.graph and c1.hdec == c2.hdec


def test_glue_loop_examples():
    G = glue_loop(trivial_graph(0, 4))
    assert G.genus == 1 and G.n == 2 and G.num_vertices == 1 and G.num_edges == 1
    D = StableGraph.build((0, 0), ((1, 3, 5), (2, 4, 6)), ((5, 6),))
    H = glue_loop(D)
    H.validate()
    assert (H.genus, H.n, H.num_edges) == (1, 2, 2)
    assert H.vertex_of(1) != H.vertex_of(2)
    assert H.h1 == D.h1 + 1


def test_contract_vertex_map():
    G = StableGraph.build((0, 0), ((1, 2, 5), (3, 4, 6)), ((5, 6),))
    C, vmap = G.contract([0])
    assert C == trivial_graph(0, 4) and vmap == (0, 0)
