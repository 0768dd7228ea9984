"""JSON encodings for graphs, classes, banana data and reports.

Rationals are always written as "p/q" strings (with q = 1 for integers).
All dictionaries are dumped with sorted keys so identical inputs give
byte-identical output.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .bananas import BananaDatum, RamificationInput
from .graphs import StableGraph
from .strata import DecoratedGraph, TautClass

__all__ = [
    "fraction_to_str",
    "str_to_fraction",
    "graph_to_json",
    "graph_from_json",
    "decorated_to_json",
    "decorated_from_json",
    "taut_to_json",
    "taut_from_json",
    "banana_to_json",
    "input_to_json",
    "report_to_json",
    "dumps",
]


def fraction_to_str(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def str_to_fraction(s: str) -> Fraction:
    return Fraction(s)


def graph_to_json(graph: StableGraph) -> dict:
    return {"genera": list(graph.genera), "legs": [list(hs) for hs in graph.legs],
            "edges": [list(e) for e in graph.edges]}


def graph_from_json(data: dict) -> StableGraph:
    return StableGraph.build(data["genera"], data["legs"], data["edges"])


def decorated_to_json(dg: DecoratedGraph) -> dict:
    return {"graph": graph_to_json(dg.graph), "psi": [list(p) for p in dg.psi],
            "kappa": [list(k) for k in dg.kappa]}


def decorated_from_json(data: dict) -> DecoratedGraph:
    return DecoratedGraph.make(graph_from_json(data["graph"]), {h: e for h, e in data["psi"]}, data["kappa"])


def taut_to_json(x: TautClass) -> dict:
    return {"g": x.g, "n": x.n,
            "terms": [dict(decorated_to_json(dg), coeff=fraction_to_str(c)) for dg, c in x.terms.items()]}


def taut_from_json(data: dict) -> TautClass:
    return TautClass(data["g"], data["n"],
                     [(decorated_from_json(t), str_to_fraction(t["coeff"])) for t in data["terms"]])


def banana_to_json(d: BananaDatum) -> dict:
    return {
        "graph": graph_to_json(d.graph),
        "genera": list(d.genera),
        "legs_v1": list(d.legs1),
        "legs_v2": list(d.legs2),
        "weights": list(d.weights),
        "b": d.b,
        "s": d.s,
        "aut": d.aut,
        "multiplicity": fraction_to_str(d.multiplicity),
        "C1": list(d.c1),
        "C2": list(d.c2),
    }


def input_to_json(inp: RamificationInput) -> dict:
    return {"g": inp.g, "n": inp.n, "A": list(inp.A), "k": inp.k}


def report_to_json(report, timings: bool = False) -> dict:
    from . import __version__
    out: dict[str, Any] = {
        "tool": "drsplit",
        "version": __version__,
        "kind": report.kind,
        "input": input_to_json(report.input),
        "conventions": report.conventions,
        "passed": report.passed,
        "pairings": [{"test": decorated_to_json(r.test), "lhs": fraction_to_str(r.lhs),
                      "rhs": fraction_to_str(r.rhs), "equal": r.equal} for r in report.records],
        "notes": list(report.notes),
    }
    if timings:
        out["runtime_seconds"] = round(report.runtime, 6)
    return out


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
