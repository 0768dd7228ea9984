from fractions import Fraction as F

import pytest

from drsplit.bananas import InvalidInput, RamificationInput as R
from drsplit.graphs import StableGraph
from drsplit.splitting import (banana_sum, calibrate_relation_sign, relation_lhs, relation_sign,
                               verify_relation, verify_splitting)
from drsplit.strata import TautClass, boundary_class, evaluate
from drsplit.tropical import phi_delta


def D(l1, l2):
    n = len(l1) + len(l2)
    return boundary_class(StableGraph.build((0, 0), (tuple(l1) + (n + 1,), tuple(l2) + (n + 2,)),
                                            ((n + 1, n + 2),)))


def test_banana_sum_zero_four():
    assert banana_sum(R(0, 4, (2, -2))) == D((1, 3), (2, 4)) + 3 * D((1, 4), (2, 3))
    assert evaluate(banana_sum(R(0, 4, (2, -2)))) == 4


def test_banana_sum_vanishes_for_zero_vector():
    for g, n in [(0, 4), (0, 5), (1, 2), (1, 3)]:
        assert banana_sum(R(g, n, (0,) * (n - 2))).is_zero()


def test_banana_sum_degree():
    x = banana_sum(R(1, 4, (2, -2)))
    assert x.degrees() == {2}


def test_banana_sum_relabeling():
    x = banana_sum(R(0, 5, (1, 2, -3)))
    y = banana_sum(R(0, 5, (2, 1, -3)))
    swap = {1: 2, 2: 1}

    def relabel(dg):
        from drsplit.strata import DecoratedGraph
        g = dg.graph
        graph = StableGraph(g.genera, tuple(tuple(swap.get(h, h) for h in hs) for hs in g.legs), g.edges)
        return DecoratedGraph.make(graph, {swap.get(h, h): e for h, e in dg.psi}, dg.kappa)

    assert TautClass(0, 5, [(relabel(dg), c) for dg, c in x]) == y


def test_twisted_zero_four_has_no_bananas():
    assert banana_sum(R(0, 4, (1, 1), 1)).is_zero()


@pytest.mark.parametrize("inp", [R(0, 4, (1, -1)), R(0, 4, (3, -3)), R(0, 5, (1, 2, -3)),
                                 R(0, 5, (2, 1, 0), 1), R(1, 3, (0,))])
def test_verify_splitting(inp):
    report = verify_splitting(inp)
    assert report.passed and report.records
    assert report.conventions["relation_psi_sign"] == -1


def test_verify_splitting_parallel_matches_serial():
    a = verify_splitting(R(0, 5, (1, 2, -3)), jobs=2)
    b = verify_splitting(R(0, 5, (1, 2, -3)))
    assert a.records == b.records


def test_calibration():
    assert calibrate_relation_sign() == {1: F(8), -1: F(0)}
    assert relation_sign() == -1


@pytest.mark.parametrize("inp", [R(0, 4, (1, 1, 1, -3)), R(0, 6, (1, 1, 1, 1, -2, -2)),
                                 R(1, 2, (3, -1), 1), R(1, 3, (2, -1, -1))])
def test_verify_relation(inp):
    assert verify_relation(inp).passed


def test_relation_with_wrong_sign_fails():
    assert not verify_relation(R(0, 5, (2, -1, 1, -3, 1)), sign=1).passed


def test_relation_vanishes_when_last_two_are_zero():
    inp = R(0, 5, (1, -1, 0, 0, 0))
    assert relation_lhs(inp).is_zero() or verify_relation(inp).passed


def test_relation_is_minus_phi_delta_in_genus_zero():
    for A in [(1, 1, 1, -3), (2, -1, 1, -3, 1), (1, 1, 1, 1, -2, -2)]:
        inp = R(0, len(A), A)
        assert relation_lhs(inp) == -phi_delta(inp)


def test_relation_needs_full_vector():
    with pytest.raises(InvalidInput):
        relation_lhs(R(0, 4, (1, -1)))
