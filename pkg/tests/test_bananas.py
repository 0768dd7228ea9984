import pytest

from drsplit.bananas import (InvalidInput, RamificationInput as R, b_bound, b_range,
                             enumerate_bananas)


def _summary(data):
    return {(d.legs1, d.b, d.weights) for d in data}


def test_zero_four_theorem_example():
    inp = R(0, 4, (2, -2))
    found = _summary(d for b in b_range(inp) for d in enumerate_bananas(inp, b))
    assert found == {((1, 3), -1, (-1,)), ((2, 3), 0, (2,)), ((2, 3), 1, (1,))}


def test_zero_vector_is_empty():
    for g, n in [(0, 4), (0, 5), (1, 2), (1, 3), (1, 4)]:
        inp = R(g, n, (0,) * (n - 2))
        for b in range(-6, 7):
            assert enumerate_bananas(inp, b) == []


def test_proposition_example():
    data = enumerate_bananas(R(0, 4, (1, 1, 1, -3)), mode="proposition")
    assert {(d.legs1, d.weights, d.s) for d in data} == {((1, 4), (2,), 1), ((2, 4), (2,), 1)}


def test_proposition_neutral_data():
    data = enumerate_bananas(R(0, 4, (1, 1, 1, -3)), mode="proposition", include_neutral=True)
    assert any(d.s == 0 for d in data)


def test_twisted_genus_one_relation_banana():
    (d,) = enumerate_bananas(R(1, 2, (3, -1), 1), mode="proposition")
    assert d.legs1 == (2,) and d.weights == (1, 1) and d.s == 1 and d.aut == 2
    assert d.c1 == (-1, 1, 1) and d.c2 == (3, -1, -1)


@pytest.mark.parametrize("A,k,g,n,N", [((2, -2), 0, 0, 4, 2), ((0, 0, 0), 0, 0, 5, 0), ((3, -1), 1, 1, 2, 5)])
def test_b_bound(A, k, g, n, N):
    assert b_bound(R(g, n, A, k)) == N


def test_b_range():
    assert b_range(R(0, 4, (2, -2))) == [-1, 0, 1]
    assert b_range(R(0, 4, (0, 0))) == [0]


def test_weight_sum_identity_and_signs():
    inp = R(1, 4, (3, -3), 0)
    for b in b_range(inp):
        for d in enumerate_bananas(inp, b):
            g1 = d.genera[0]
            n1 = d.graph.valence(0)
            a1 = sum(inp.A[i - 1] for i in d.legs1 if i <= inp.n - 2)
            assert sum(d.weights) == -b - a1 + inp.k * (2 * g1 - 2 + n1)
            assert all((w > 0) if b >= 0 else (w < 0) for w in d.weights)
            assert inp.n - 1 in d.legs1 and inp.n in d.legs2
            assert sum(d.c1) == inp.k * (2 * g1 - 2 + n1)


def test_multi_edge_automorphisms():
    inp = R(1, 4, (3, -3))
    data = [d for b in b_range(inp) for d in enumerate_bananas(inp, b)]
    two_edge = [d for d in data if len(d.weights) == 2]
    assert two_edge
    for d in two_edge:
        assert d.aut == (2 if d.weights[0] == d.weights[1] else 1)


def test_genus_split():
    inp = R(1, 4, (1, -1))
    for b in b_range(inp):
        for d in enumerate_bananas(inp, b):
            assert sum(d.genera) + len(d.weights) - 1 == inp.g


def test_invalid_inputs():
    with pytest.raises(InvalidInput, match=r"sum\(A\) = k\(2g-2\+n\)"):
        R(0, 4, (1, 0))
    with pytest.raises(InvalidInput):
        R(0, 4, (1, -1, 0))
    with pytest.raises(InvalidInput):
        R(0, 2, ())
    with pytest.raises(InvalidInput):
        enumerate_bananas(R(0, 4, (1, -1)), mode="proposition")


def test_glued_and_small_views():
    inp = R(0, 5, (1, -1, 0))
    assert inp.is_small and inp.glued() == R(1, 3, (1, -1, 0))
    assert R(1, 3, (1, -1, 0)).small() == inp
    # theorem mode accepts the glued description as well
    assert enumerate_bananas(R(1, 2, (2, -2)), 0) == enumerate_bananas(R(0, 4, (2, -2)), 0)
