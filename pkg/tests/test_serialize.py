from fractions import Fraction as F
import json

from drsplit.bananas import RamificationInput as R
from drsplit.graphs import stable_graphs
from drsplit.pixton import dr_cycle
from drsplit.serialize import (dumps, fraction_to_str, graph_from_json, graph_to_json, report_to_json,
                               str_to_fraction, taut_from_json, taut_to_json)
from drsplit.splitting import verify_splitting


def test_fractions():
    for q in (F(0), F(-3, 7), F(5)):
        assert str_to_fraction(fraction_to_str(q)) == q
    assert fraction_to_str(F(4, 2)) == "2/1"


def test_graph_round_trip():
    for G in stable_graphs(1, 3, 2):
        assert graph_from_json(json.loads(json.dumps(graph_to_json(G)))) == G


def test_class_round_trip():
    x = dr_cycle(R(1, 3, (2, -1, -1)))
    assert taut_from_json(json.loads(dumps(taut_to_json(x)))) == x


def test_report_is_deterministic():
    a = dumps(report_to_json(verify_splitting(R(0, 5, (1, 2, -3)))))
    b = dumps(report_to_json(verify_splitting(R(0, 5, (1, 2, -3)))))
    assert a == b and a.endswith("\n")
    assert "runtime_seconds" not in a
