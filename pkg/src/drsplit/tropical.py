"""Genus-0 tropical curves, stabilizing piecewise linear functions and Phi.

A tropical curve is a stable tree whose edges and legs carry lengths.  The
stabilizing function alpha for slopes B has slope b_i along leg i (pointing
away from its vertex), is normalized by alpha(p_1) = 0 with
alpha(p_i) = alpha(v_i) + b_i * l_i, and is balanced: at every vertex the
outgoing slopes sum to k(2g(v)-2+n(v)).  In genus 0 this is the multidegree-0
condition and determines alpha uniquely.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Mapping, Sequence

import sympy as sp

from .bananas import RamificationInput
from .graphs import StableGraph, stable_graphs
from .strata import TautClass, boundary_class, evaluate, psi_class

__all__ = [
    "TropicalCurve",
    "PLFunction",
    "stabilizing_pl",
    "delta",
    "glued_edge_slope",
    "phi",
    "phi_delta",
    "boundary_sign",
    "format_linear",
    "length_order",
    "delta_rays",
    "symbolic_slopes",
    "load_curve",
    "NonIntegralSlope",
]


class NonIntegralSlope(ValueError):
    """The glued edge would need a non-integer slope: no such PL function exists."""


@dataclass(frozen=True)
class TropicalCurve:
    graph: StableGraph
    edge_lengths: tuple = ()
    leg_lengths: tuple = ()

    @classmethod
    def symbolic(cls, graph: StableGraph) -> "TropicalCurve":
        """Independent length symbols l1..ln on legs; 'l' (one edge) or l_e1, l_e2, ... on edges."""
        n = graph.n
        legs = tuple(sp.Symbol(f"l{i}", positive=True) for i in range(1, n + 1))
        if graph.num_edges == 1:
            edges = (sp.Symbol("l", positive=True),)
        else:
            edges = tuple(sp.Symbol(f"l_e{t + 1}", positive=True) for t in range(graph.num_edges))
        return cls(graph, edges, legs)

    def __post_init__(self):
        if self.graph.genus != 0 or self.graph.h1 != 0:
            raise ValueError("only genus-0 trees are supported")
        self.graph.validate()
        if len(self.edge_lengths) != self.graph.num_edges or len(self.leg_lengths) != self.graph.n:
            raise ValueError("need one length per edge and per leg")
        for x in self.edge_lengths:
            x = sp.sympify(x)
            if x.is_number and not x > 0:
                raise ValueError("edge lengths must be positive")


@dataclass(frozen=True)
class PLFunction:
    vertex_values: tuple          # sympy expressions, one per vertex
    edge_slopes: tuple[int, ...]  # slope along edge (h, h') from the vertex of h to that of h'
    leg_slopes: tuple             # slope along leg i pointing away from its vertex

    def outgoing(self, curve: TropicalCurve, v: int):
        """Sum of outgoing slopes at v."""
        g = curve.graph
        total = sum(self.leg_slopes[h - 1] for h in g.legs[v] if h <= g.n)
        for (a, b), s in zip(g.edges, self.edge_slopes):
            if a in g.legs[v]:
                total += s
            if b in g.legs[v]:
                total -= s
        return total

    def leg_value(self, curve: TropicalCurve, i: int):
        v = curve.graph.vertex_of(i)
        return sp.expand(self.vertex_values[v] + self.leg_slopes[i - 1] * curve.leg_lengths[i - 1])


def _side(graph: StableGraph, edge: int) -> set[int]:
    """Vertices on the side of the first half-edge of ``edge`` after cutting it."""
    vof = graph.vertex_map()
    a, _ = graph.edges[edge]
    seen = {vof[a]}
    stack = [vof[a]]
    while stack:
        v = stack.pop()
        for i, (x, y) in enumerate(graph.edges):
            if i == edge:
                continue
            for p, q in ((x, y), (y, x)):
                if vof[p] == v and vof[q] not in seen:
                    seen.add(vof[q])
                    stack.append(vof[q])
    return seen


def stabilizing_pl(curve: TropicalCurve, B: Sequence, k) -> PLFunction:
    """The unique balanced PL function with leg slopes B and alpha(p_1) = 0."""
    graph = curve.graph
    n = graph.n
    if len(B) != n:
        raise ValueError(f"need {n} leg slopes, got {len(B)}")
    if sp.simplify(sum(B) - k * (n - 2)) != 0:
        raise ValueError(f"leg slopes must sum to k(2g-2+n) = {k}*{n - 2}")
    slopes = []
    for e in range(graph.num_edges):
        side = _side(graph, e)
        legs_in = [h for v in side for h in graph.legs[v] if h <= n]
        excess = sum(2 * graph.genera[v] - 2 + graph.valence(v) for v in side)
        slopes.append(sp.expand(k * excess - sum(B[i - 1] for i in legs_in)))
    values = [None] * graph.num_vertices
    root = graph.vertex_of(1)
    values[root] = sp.expand(-B[0] * curve.leg_lengths[0])
    vof = graph.vertex_map()
    pending = True
    while pending:
        pending = False
        for (a, b), s, length in zip(graph.edges, slopes, curve.edge_lengths):
            u, w = vof[a], vof[b]
            if values[u] is not None and values[w] is None:
                values[w] = sp.expand(values[u] + s * length)
                pending = True
            elif values[w] is not None and values[u] is None:
                values[u] = sp.expand(values[w] - s * length)
                pending = True
    return PLFunction(tuple(values), tuple(slopes), tuple(B))


def delta(curve: TropicalCurve, B: Sequence, k):
    """alpha(p_n) - alpha(p_{n-1}) as a linear form in the lengths."""
    n = curve.graph.n
    alpha = stabilizing_pl(curve, B, k)
    return sp.expand(alpha.leg_value(curve, n) - alpha.leg_value(curve, n - 1))


def symbolic_slopes(n: int, k=0) -> tuple:
    """Generic leg slopes a1..an with a1 eliminated through sum = k(n-2)."""
    a = [sp.Symbol(f"a{i}") for i in range(1, n + 1)]
    a[0] = k * (n - 2) - sum(a[1:])
    return tuple(a)


def glued_edge_slope(curve: TropicalCurve, A: Sequence[int], k: int) -> int:
    """Slope b on the edge formed by gluing legs n-1 and n, oriented from p_{n-1} to p_n.

    Legs n-1, n get slopes b and -b; b is the solution of
    alpha(p_n) = alpha(p_{n-1}).  Lengths must be numeric.
    """
    n = curve.graph.n
    if len(A) != n - 2:
        raise ValueError(f"A must have length n-2 = {n - 2}")
    b = sp.Symbol("b")
    d = delta(curve, tuple(A) + (b, -b), k)
    if d.free_symbols - {b}:
        raise ValueError("glued_edge_slope needs numeric lengths")
    sol = sp.solve(sp.Eq(d, 0), b)
    if len(sol) != 1:
        raise ValueError("glued edge slope is not determined")
    value = sp.Rational(sol[0])
    if value.q != 1:
        raise NonIntegralSlope(f"glued edge slope {value} is not an integer")
    return int(value.p)


# --- formatting ------------------------------------------------------------

def _sym_key(s: sp.Symbol):
    name = s.name
    digits = "".join(c for c in name if c.isdigit())
    return (name.rstrip("0123456789"), int(digits) if digits else 0)


def _coeff_terms(c) -> list[tuple[int, str]]:
    c = sp.expand(c)
    terms = []
    const = c.as_coeff_Add()[0] if c.is_Add else (c if c.is_number else 0)
    for s in sorted(c.free_symbols, key=_sym_key):
        terms.append((sp.Rational(c.coeff(s)), s.name))
    if const:
        terms.append((sp.Rational(const), ""))
    return terms


def _inner(terms) -> str:
    out = []
    for i, (q, name) in enumerate(terms):
        mag = abs(q)
        body = name if (mag == 1 and name) else (f"{mag}*{name}" if name else f"{mag}")
        if i == 0:
            out.append(body if q > 0 else "-" + body)
        else:
            out.append(("+" if q > 0 else "-") + body)
    return "".join(out)


def format_linear(form, order: Sequence[sp.Symbol]) -> str:
    """Print a linear form in the length variables, e.g. ``a4*l4 - a3*l3 + (a2+a4)*l``.

    Each length variable is printed once with its coefficient; coefficients
    whose terms are all negative are printed as ``- (...)``.
    """
    form = sp.expand(form)
    pieces = []
    for var in order:
        c = sp.expand(form.coeff(var))
        if c == 0:
            continue
        terms = _coeff_terms(c)
        negative = all(q < 0 for q, _ in terms)
        if negative:
            terms = [(-q, name) for q, name in terms]
        if len(terms) == 1:
            q, name = terms[0]
            if name:
                body = f"{name}*{var.name}" if q == 1 else f"{q}*{name}*{var.name}"
            else:
                body = var.name if q == 1 else f"{q}*{var.name}"
        else:
            body = f"({_inner(terms)})*{var.name}"
        pieces.append((negative, body))
    if not pieces:
        return "0"
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for negative, body in pieces[1:]:
        out += (" - " if negative else " + ") + body
    return out


def length_order(curve: TropicalCurve) -> list[sp.Symbol]:
    """Leg n, leg n-1, the remaining legs, then edges."""
    n = curve.graph.n
    legs = list(curve.leg_lengths)
    order = [legs[n - 1], legs[n - 2]] + legs[:n - 2]
    return [x for x in order + list(curve.edge_lengths) if isinstance(x, sp.Symbol)]


# --- curve files --------------------------------------------------------------

def load_curve(path: str | Path) -> tuple[TropicalCurve, tuple, object]:
    """Read a curve JSON: {"genera", "legs", "edges", "A": list or "symbolic", "k"}."""
    data = json.loads(Path(path).read_text())
    graph = StableGraph.build(data["genera"], data["legs"], data["edges"])
    curve = TropicalCurve.symbolic(graph)
    k = data.get("k", 0)
    A = data.get("A", "symbolic")
    B = symbolic_slopes(graph.n, k) if A == "symbolic" else tuple(int(a) for a in A)
    return curve, B, k


# --- Phi ----------------------------------------------------------------------

BOUNDARY_SIGN_CANDIDATES = (1, -1)


def phi(g: int, n: int, rays: Mapping, sigma: int | None = None) -> TautClass:
    """Degree-1 class of a PL function given by its slopes on rays.

    Keys are ``("leg", i)`` for the leg-length ray l_i, contributing
    -slope * psi_i, or ``("edge", G)`` for the ray of a one-edge graph G,
    contributing sigma * slope * [D_G].
    """
    if sigma is None:
        sigma = boundary_sign()
    total = TautClass.zero(g, n)
    for key, slope in rays.items():
        if not slope:
            continue
        kind, what = key
        if kind == "leg":
            total = total + (-Fraction(slope)) * psi_class(g, n, what)
        elif kind == "edge":
            if what.num_edges != 1:
                raise ValueError("boundary rays come from one-edge graphs")
            total = total + (sigma * Fraction(slope)) * boundary_class(what)
        else:
            raise ValueError(f"unsupported ray kind {kind!r}")
    return total


def delta_rays(inp: RamificationInput) -> dict:
    """Slopes of delta_A on the leg rays and the one-edge boundary rays of Mbar_{0,n}."""
    if inp.g != 0 or inp.is_small:
        raise ValueError("delta rays are computed on Mbar_{0,n} with A of length n")
    n = inp.n
    rays: dict = {}
    trivial = TropicalCurve.symbolic(stable_graphs(0, n, 0)[0])
    form = delta(trivial, inp.A, inp.k)
    for i, length in enumerate(trivial.leg_lengths, start=1):
        rays[("leg", i)] = int(form.coeff(length))
    for graph in stable_graphs(0, n, 1):
        curve = TropicalCurve.symbolic(graph)
        rays[("edge", graph)] = int(sp.expand(delta(curve, inp.A, inp.k)).coeff(curve.edge_lengths[0]))
    return rays


def phi_delta(inp: RamificationInput, sigma: int | None = None) -> TautClass:
    return phi(inp.g, inp.n, delta_rays(inp), sigma)


@lru_cache(maxsize=None)
def boundary_sign() -> int:
    """Sign sigma of boundary rays in Phi, fixed by requiring int Phi(delta_A) = 0 on
    Mbar_{0,4} for A = (1,1,1,-3)."""
    inp = RamificationInput(0, 4, (1, 1, 1, -3), 0)
    good = [s for s in BOUNDARY_SIGN_CANDIDATES if evaluate(phi_delta(inp, s)) == 0]
    if len(good) != 1:
        raise RuntimeError("boundary sign calibration is ambiguous")
    return good[0]
