"""Double ramification cycles from Pixton's graph sum (oracle implementation).

DR_g(A) with twist k is 2^{-g} times the r-constant term of

    sum_{G, w} r^{-h1(G)} / |Aut G| xi_{G*}[ prod_v exp(-k^2 kappa_1(v))
        prod_i exp(a_i^2 psi_i)
        prod_{e=(h,h')} (1 - exp(-w(h)w(h')(psi_h + psi_h'))) / (psi_h + psi_h') ]

taken in degree g, where w runs over weightings mod r: a_i on leg i,
w(h) + w(h') = 0 on edges and sum over half-edges at v of w = k(2g(v)-2+n(v)).
For r large the weighting sum is a polynomial in r; its constant term is
read off by Lagrange interpolation and a second window of r values is used
as a self-check.
"""
from __future__ import annotations

import warnings
from collections import defaultdict, deque
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial
from typing import Sequence

from .bananas import InvalidInput, RamificationInput
from .graphs import StableGraph, stable_graphs
from .strata import DecoratedGraph, TautClass, fundamental_class, pair

__all__ = [
    "dr_cycle",
    "dr_pair",
    "default_r",
    "check_r_independence",
    "check_polynomiality",
    "OracleError",
]


class OracleError(RuntimeError):
    """The graph sum failed one of its self-checks."""


def default_r(inp: RamificationInput) -> int:
    """First modulus of the interpolation window."""
    return sum(abs(a) for a in inp.A) + abs(inp.k) * (2 * inp.g - 2 + inp.n) + inp.g + 2


def _glued(inp: RamificationInput) -> RamificationInput:
    return inp.glued() if inp.is_small else inp


def dr_cycle(inp: RamificationInput, r_start: int | None = None) -> TautClass:
    """DR_g(A) as a TautClass of degree g on Mbar_{g,n}."""
    inp = _glued(inp)
    r0 = default_r(inp) if r_start is None else r_start
    if r0 < default_r(inp):
        raise ValueError(f"r_start must be at least {default_r(inp)}")
    return _dr_cycle(inp.g, inp.n, inp.A, inp.k, r0)


@lru_cache(maxsize=None)
def _dr_cycle(g: int, n: int, A: tuple[int, ...], k: int, r0: int) -> TautClass:
    if g == 0:
        return fundamental_class(0, n)
    acc: dict[DecoratedGraph, Fraction] = defaultdict(Fraction)
    for e in range(g + 1):
        for gam in stable_graphs(g, n, e):
            for dg, c in _graph_contribution(gam, g, A, k, r0).items():
                acc[dg] += c
    scale = Fraction(1, 2 ** g)
    return TautClass(g, n, {dg: c * scale for dg, c in acc.items()})


def _spanning_order(gam: StableGraph):
    """BFS spanning tree: returns (order, parent half-edge at each non-root vertex, tree edge set)."""
    vof = gam.vertex_map()
    adj = defaultdict(list)
    for i, (a, b) in enumerate(gam.edges):
        if vof[a] != vof[b]:
            adj[vof[a]].append((i, a, b))
            adj[vof[b]].append((i, b, a))
    order, parent, tree = [0], {}, set()
    seen = {0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for i, here, there in adj[v]:
            w = vof[there]
            if w not in seen:
                seen.add(w)
                parent[w] = (there, here)   # (half-edge at w, half-edge at v)
                tree.add(i)
                order.append(w)
                queue.append(w)
    return order, parent, tree


def _weightings(gam: StableGraph, A: Sequence[int], k: int, r: int):
    """Yield, for each admissible weighting mod r, the tuple of edge products w(h)w(h')."""
    vof = gam.vertex_map()
    n = len(A)
    order, parent, tree = _spanning_order(gam)
    free = [i for i in range(gam.num_edges) if i not in tree]
    target = [k * (2 * gam.genera[v] - 2 + gam.valence(v)) for v in range(gam.num_vertices)]
    base = [0] * gam.num_vertices
    for i in range(1, n + 1):
        base[vof[i]] += A[i - 1]
    for choice in product(range(r), repeat=len(free)):
        w: dict[int, int] = {}
        for i, x in zip(free, choice):
            a, b = gam.edges[i]
            w[a], w[b] = x, (-x) % r
        for v in reversed(order[1:]):
            here, up = parent[v]
            s = base[v] + sum(w[h] for h in gam.legs[v] if h in w)
            w[here] = (target[v] - s) % r
            w[up] = (-w[here]) % r
        yield tuple(w[a] * w[b] for a, b in gam.edges)


def _edge_vectors(num_edges: int, budget: int):
    for js in product(range(budget + 1), repeat=num_edges):
        if sum(js) <= budget:
            yield js


def _lagrange_at_zero(xs: Sequence[int], ys: Sequence[Fraction]) -> Fraction:
    total = Fraction(0)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        term = Fraction(yi)
        for j, xj in enumerate(xs):
            if j != i:
                term *= Fraction(-xj, xi - xj)
        total += term
    return total


def _lagrange_eval(xs, ys, x) -> Fraction:
    total = Fraction(0)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        term = Fraction(yi)
        for j, xj in enumerate(xs):
            if j != i:
                term *= Fraction(x - xj, xi - xj)
        total += term
    return total


def _weight_sums(gam: StableGraph, A, k, budget: int, r0: int) -> dict[tuple[int, ...], Fraction]:
    """Constant terms in r of r^{-h1} sum_w prod_e c_e^{j_e+1}, for every edge-degree vector j."""
    js_all = list(_edge_vectors(gam.num_edges, budget))
    max_deg = 2 * (budget + gam.num_edges)
    rs = list(range(r0, r0 + max_deg + 2))
    values = {js: [] for js in js_all}
    h1 = gam.h1
    for r in rs:
        sums = dict.fromkeys(js_all, 0)
        for cs in _weightings(gam, A, k, r):
            for js in js_all:
                p = 1
                for c, j in zip(cs, js):
                    p *= c ** (j + 1)
                sums[js] += p
        for js in js_all:
            values[js].append(Fraction(sums[js], r ** h1))
    out = {}
    for js, ys in values.items():
        deg = 2 * (sum(js) + gam.num_edges)
        xs, fit = rs[:deg + 1], ys[:deg + 1]
        for x, y in zip(rs[deg + 1:], ys[deg + 1:]):
            if _lagrange_eval(xs, fit, x) != y:
                raise OracleError(f"weighting sum is not polynomial in r on {gam} for {js}")
        out[js] = _lagrange_at_zero(xs, fit)
    return out


Poly = dict


def _pmul(p: Poly, q: Poly, gam: StableGraph, cap: int) -> Poly:
    out: Poly = defaultdict(Fraction)
    vof = gam.vertex_map()
    for (pa, ka), ca in p.items():
        for (pb, kb), cb in q.items():
            psi = dict(pa)
            for h, e in pb:
                psi[h] = psi.get(h, 0) + e
            kap = tuple(tuple(sorted(x + y)) for x, y in zip(ka, kb))
            deg = [sum(x) for x in kap]
            for h, e in psi.items():
                deg[vof[h]] += e
            if sum(deg) > cap or any(d > gam.vertex_dim(v) for v, d in enumerate(deg)):
                continue
            out[(tuple(sorted(psi.items())), kap)] += ca * cb
    return out


def _graph_contribution(gam: StableGraph, g: int, A, k, r0: int) -> dict[DecoratedGraph, Fraction]:
    budget = g - gam.num_edges
    nv = gam.num_vertices
    empty = tuple(() for _ in range(nv))
    one: Poly = {((), empty): Fraction(1)}
    # vertex and leg exponentials, truncated at the decoration budget
    rest = one
    for i, a in enumerate(A, start=1):
        series = {(((i, m),) if m else (), empty): Fraction(a * a) ** m / factorial(m)
                  for m in range(budget + 1)}
        rest = _pmul(rest, series, gam, budget)
    if k:
        for v in range(nv):
            series = {}
            for m in range(budget + 1):
                kap = list(empty)
                kap[v] = (1,) * m
                series[((), tuple(kap))] = Fraction(-k * k) ** m / factorial(m)
            rest = _pmul(rest, series, gam, budget)
    sums = _weight_sums(gam, A, k, budget, r0)
    out: dict[DecoratedGraph, Fraction] = defaultdict(Fraction)
    for js, w in sums.items():
        if not w:
            continue
        coeff = w
        edge_poly = one
        for (a, b), j in zip(gam.edges, js):
            coeff *= Fraction((-1) ** j, factorial(j + 1))
            binom = {(tuple((h, e) for h, e in ((a, t), (b, j - t)) if e), empty): Fraction(comb(j, t))
                     for t in range(j + 1)}
            edge_poly = _pmul(edge_poly, binom, gam, budget)
        full = _pmul(edge_poly, rest, gam, budget)
        for (psi, kap), c in full.items():
            if sum(e for _, e in psi) + sum(sum(x) for x in kap) != budget:
                continue
            out[DecoratedGraph(gam, psi, kap).canonical()] += coeff * c
    return out


def check_r_independence(inp: RamificationInput) -> bool:
    """Recompute with the interpolation window shifted by one; True iff the classes agree."""
    inp = _glued(inp)
    r0 = default_r(inp)
    return dr_cycle(inp, r0) == dr_cycle(inp, r0 + 1)


@lru_cache(maxsize=None)
def _dr_pair(inp: RamificationInput, test: TautClass) -> Fraction:
    return pair(dr_cycle(inp), test)


def dr_pair(inp: RamificationInput, test: TautClass) -> Fraction:
    """Integral of DR(A) against a test class of complementary degree.

    A test class of the wrong degree pairs to 0 and triggers a warning.
    """
    inp = _glued(inp)
    if (test.g, test.n) != (inp.g, inp.n):
        raise ValueError(f"test class lives on ({test.g}, {test.n}), DR on ({inp.g}, {inp.n})")
    want = 2 * inp.g - 3 + inp.n
    if test.degrees() - {want}:
        warnings.warn(f"test class has degrees {sorted(test.degrees())}, expected {want}; "
                      "off-degree parts pair to 0", stacklevel=2)
    return _dr_pair(inp, test)


def check_polynomiality(g: int, n: int, k: int, base: Sequence[int], direction: Sequence[int],
                        test: TautClass) -> bool:
    """dr_pair along the line base + t*direction is a polynomial of degree <= 2g in t.

    Fits on t = 0..2g and checks one further point.  ``direction`` must sum to 0.
    """
    if sum(direction) != 0:
        raise InvalidInput("direction must have zero sum to keep sum(A) fixed")
    ts = list(range(2 * g + 2))
    ys = [dr_pair(RamificationInput(g, n, tuple(a + t * d for a, d in zip(base, direction)), k), test)
          for t in ts]
    return _lagrange_eval(ts[:-1], ys[:-1], ts[-1]) == ys[-1]
