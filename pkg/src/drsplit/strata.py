"""Tautological classes as rational combinations of decorated stable graphs.

Convention: a term ``c * [G, alpha]`` stands for ``c / |Aut G| * xi_{G*}(alpha)``
where ``xi_G`` is the gluing map of ``G`` and ``Aut G`` is the automorphism
group of the undecorated graph.  With ``alpha = 1`` this is the class of the
closed boundary stratum of ``G``.  Automorphism factors are only applied when
a class is evaluated or pushed forward.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Iterator, Mapping, Sequence

from .graphs import (StableGraph, UnstableError, automorphism_count, automorphisms,
                     canonical_form, glue_loop, stable_graphs, trivial_graph)
from .intersection import vertex_integral

__all__ = [
    "DecoratedGraph",
    "TautClass",
    "fundamental_class",
    "psi_class",
    "kappa_class",
    "boundary_class",
    "multiply",
    "pair",
    "push_zeta",
    "push_glue_loop",
    "evaluate",
    "decorated_strata",
]


@dataclass(frozen=True, order=True)
class DecoratedGraph:
    """Stable graph with psi exponents on half-edges and kappa monomials on vertices."""

    graph: StableGraph
    psi: tuple[tuple[int, int], ...] = ()
    kappa: tuple[tuple[int, ...], ...] = ()

    @classmethod
    def make(cls, graph: StableGraph, psi: Mapping[int, int] | None = None,
             kappa: Sequence[Sequence[int]] | None = None) -> "DecoratedGraph":
        psi_items = tuple(sorted((h, e) for h, e in (psi or {}).items() if e))
        if kappa is None:
            kappa = [()] * graph.num_vertices
        kap = tuple(tuple(sorted(k)) for k in kappa)
        halfedges = {h for hs in graph.legs for h in hs}
        if any(h not in halfedges or e < 0 for h, e in psi_items):
            raise ValueError("psi decoration on a missing half-edge")
        if len(kap) != graph.num_vertices or any(b <= 0 for k in kap for b in k):
            raise ValueError("kappa decoration must give positive indices per vertex")
        return cls(graph, psi_items, kap)

    @property
    def degree(self) -> int:
        return self.graph.num_edges + sum(e for _, e in self.psi) + sum(sum(k) for k in self.kappa)

    def psi_map(self) -> dict[int, int]:
        return dict(self.psi)

    def vertex_degree(self, v: int) -> int:
        hs = set(self.graph.legs[v])
        return sum(e for h, e in self.psi if h in hs) + sum(self.kappa[v])

    def canonical(self) -> "DecoratedGraph":
        return _canonical_decorated(self)

    def vertex_data(self, v: int) -> tuple[int, tuple[int, ...], tuple[int, ...]]:
        """(genus, psi exponents in half-edge order, kappa indices) of a vertex."""
        p = self.psi_map()
        return self.graph.genera[v], tuple(p.get(h, 0) for h in self.graph.legs[v]), self.kappa[v]


@lru_cache(maxsize=None)
def _canonical_decorated(dg: DecoratedGraph) -> DecoratedGraph:
    cf = canonical_form(dg.graph, dict(dg.psi), dg.kappa)
    return DecoratedGraph(cf.graph, cf.hdec, cf.vdec)


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class TautClass:
    """Finite formal sum of decorated strata on Mbar_{g,n} with rational coefficients."""

    __slots__ = ("g", "n", "terms")

    def __init__(self, g: int, n: int, terms: Mapping[DecoratedGraph, Fraction] | Iterable = ()):
        if g < 0 or n < 0 or 2 * g - 2 + n <= 0:
            raise UnstableError(f"(g, n) = ({g}, {n}) is unstable")
        self.g, self.n = g, n
        acc: dict[DecoratedGraph, Fraction] = defaultdict(Fraction)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for dg, c in items:
            if dg.graph.genus != g or dg.graph.n != n:
                raise ValueError(f"term of type ({dg.graph.genus}, {dg.graph.n}) in class on ({g}, {n})")
            acc[dg.canonical()] += _as_fraction(c)
        self.terms = {dg: c for dg, c in sorted(acc.items()) if c != 0}

    @classmethod
    def zero(cls, g: int, n: int) -> "TautClass":
        return cls(g, n)

    @property
    def dim(self) -> int:
        return 3 * self.g - 3 + self.n

    def __iter__(self) -> Iterator[tuple[DecoratedGraph, Fraction]]:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {dg.degree for dg in self.terms}

    def degree_part(self, d: int) -> "TautClass":
        return TautClass(self.g, self.n, {dg: c for dg, c in self.terms.items() if dg.degree == d})

    def _check(self, other: "TautClass") -> None:
        if (self.g, self.n) != (other.g, other.n):
            raise ValueError(f"classes live on different spaces: {(self.g, self.n)} vs {(other.g, other.n)}")

    def __add__(self, other: "TautClass") -> "TautClass":
        self._check(other)
        return TautClass(self.g, self.n, list(self.terms.items()) + list(other.terms.items()))

    def __sub__(self, other: "TautClass") -> "TautClass":
        return self + (-other)

    def __neg__(self) -> "TautClass":
        return TautClass(self.g, self.n, {dg: -c for dg, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, TautClass):
            return multiply(self, other)
        c = _as_fraction(other)
        return TautClass(self.g, self.n, {dg: c * x for dg, x in self.terms.items()})

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other) -> bool:
        return isinstance(other, TautClass) and (self.g, self.n) == (other.g, other.n) \
            and self.terms == other.terms

    def __hash__(self):
        return hash((self.g, self.n, tuple(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return f"TautClass({self.g}, {self.n}, 0)"
        return f"TautClass({self.g}, {self.n}, {len(self.terms)} terms)"

    def evaluate(self) -> Fraction:
        return evaluate(self)


# --- generators ----------------------------------------------------------

def fundamental_class(g: int, n: int) -> TautClass:
    return TautClass(g, n, [(DecoratedGraph.make(trivial_graph(g, n)), 1)])


def psi_class(g: int, n: int, i: int, power: int = 1) -> TautClass:
    if not 1 <= i <= n:
        raise ValueError(f"no marking {i} on ({g}, {n})")
    return TautClass(g, n, [(DecoratedGraph.make(trivial_graph(g, n), {i: power}), 1)])


def kappa_class(g: int, n: int, j: int) -> TautClass:
    if j < 1:
        raise ValueError("kappa index must be positive")
    return TautClass(g, n, [(DecoratedGraph.make(trivial_graph(g, n), kappa=[(j,)]), 1)])


def boundary_class(graph: StableGraph) -> TautClass:
    """Class of the closed stratum of ``graph`` (no automorphism factor stored)."""
    graph.validate()
    return TautClass(graph.genus, graph.n, [(DecoratedGraph.make(graph), 1)])


# --- evaluation ----------------------------------------------------------

def _term_integral(dg: DecoratedGraph) -> Fraction:
    total = Fraction(1, automorphism_count(dg.graph))
    for v in range(dg.graph.num_vertices):
        g, psi, kap = dg.vertex_data(v)
        val = vertex_integral(g, psi, kap)
        if not val:
            return Fraction(0)
        total *= val
    return total


def evaluate(x: TautClass) -> Fraction:
    """Degree of the top-degree part of ``x``; other degrees contribute 0."""
    dim = x.dim
    return sum((c * _term_integral(dg) for dg, c in x.terms.items() if dg.degree == dim), Fraction(0))


# --- multiplication ------------------------------------------------------

@lru_cache(maxsize=None)
def _contraction_index(g: int, n: int, e: int) -> dict[StableGraph, tuple]:
    """For every graph with e edges and every subset of kept edges, file the
    (graph, kept, vertex map, iso to canonical) under the canonical contraction."""
    index: dict[StableGraph, list] = defaultdict(list)
    for gam in stable_graphs(g, n, e):
        all_edges = range(e)
        for size in range(e + 1):
            for kept in combinations(all_edges, size):
                contracted, vmap = gam.contract([i for i in all_edges if i not in kept])
                cf = canonical_form(contracted)
                index[cf.graph].append((gam, frozenset(kept), vmap, cf))
    return {k: tuple(v) for k, v in index.items()}


@lru_cache(maxsize=None)
def _structures(a: StableGraph, gam: StableGraph) -> tuple:
    """All a-structures on gam: (kept edges, half-edge map a->gam, vertex map gam->a)."""
    cf_a = canonical_form(a)
    a_inv_h = {new: old for old, new in cf_a.halfedge_map}
    a_inv_v = {new: old for old, new in enumerate(cf_a.vertex_map)}
    out = []
    for g2, kept, vmap, cf in _contraction_index(gam.genus, gam.n, gam.num_edges).get(cf_a.graph, ()):
        if g2 != gam:
            continue
        # phi0: contracted -> a through the common canonical form
        to_a_h = {old: a_inv_h[new] for old, new in cf.halfedge_map}
        to_a_v = [a_inv_v[cf.vertex_map[q]] for q in range(len(cf.vertex_map))]
        for sigma_h, sigma_v in automorphisms(a):
            hmap = {sigma_h[to_a_h[h]]: h for h in to_a_h}
            vm = tuple(sigma_v[to_a_v[vmap[v]]] for v in range(gam.num_vertices))
            out.append((kept, hmap, vm))
    return tuple(out)


@lru_cache(maxsize=None)
def _structure_graphs(a: StableGraph, e: int) -> tuple[StableGraph, ...]:
    cf_a = canonical_form(a).graph
    index = _contraction_index(a.genus, a.n, e)
    return tuple(sorted({entry[0] for entry in index.get(cf_a, ())}))


Poly = dict  # monomial (psi tuple, kappa tuple) -> Fraction


def _poly_mul(p: Poly, q: Poly, gam: StableGraph) -> Poly:
    out: Poly = defaultdict(Fraction)
    for (pa, ka), ca in p.items():
        for (pb, kb), cb in q.items():
            psi = dict(pa)
            for h, e in pb:
                psi[h] = psi.get(h, 0) + e
            kap = tuple(tuple(sorted(x + y)) for x, y in zip(ka, kb))
            mono = (tuple(sorted(psi.items())), kap)
            if _fits(mono, gam):
                out[mono] += ca * cb
    return out


def _fits(mono, gam: StableGraph) -> bool:
    psi, kap = mono
    deg = [sum(k) for k in kap]
    vof = gam.vertex_map()
    for h, e in psi:
        deg[vof[h]] += e
    return all(deg[v] <= gam.vertex_dim(v) for v in range(gam.num_vertices))


def _pullback(dg: DecoratedGraph, hmap: dict[int, int], vmap: tuple[int, ...], gam: StableGraph) -> Poly:
    nv = gam.num_vertices
    psi = tuple(sorted((hmap[h], e) for h, e in dg.psi))
    empty = tuple(() for _ in range(nv))
    poly: Poly = {(psi, empty): Fraction(1)}
    for v, kap in enumerate(dg.kappa):
        if not kap:
            continue
        targets = [w for w in range(nv) if vmap[w] == v]
        for b in kap:
            step: Poly = {}
            for w in targets:
                k = [()] * nv
                k[w] = (b,)
                step[((), tuple(k))] = Fraction(1)
            poly = _poly_mul(poly, step, gam)
    return poly


def _excess(gam: StableGraph, common: Iterable[int]) -> Poly:
    nv = gam.num_vertices
    empty = tuple(() for _ in range(nv))
    poly: Poly = {((), empty): Fraction(1)}
    for i in common:
        a, b = gam.edges[i]
        poly = _poly_mul(poly, {(((a, 1),), empty): Fraction(-1), (((b, 1),), empty): Fraction(-1)}, gam)
    return poly


@lru_cache(maxsize=None)
def _multiply_terms(x: DecoratedGraph, y: DecoratedGraph, g: int, n: int) -> tuple:
    dim = 3 * g - 3 + n
    if x.degree + y.degree > dim:
        return ()
    a, b = x.graph, y.graph
    ea, eb = a.num_edges, b.num_edges
    weight = Fraction(1, automorphism_count(a) * automorphism_count(b))
    out: dict[DecoratedGraph, Fraction] = defaultdict(Fraction)
    for e in range(max(ea, eb), min(ea + eb, dim) + 1):
        common_graphs = set(_structure_graphs(a, e)) & set(_structure_graphs(b, e))
        for gam in sorted(common_graphs):
            full = frozenset(range(e))
            sa, sb = _structures(a, gam), _structures(b, gam)
            for kept_a, hmap_a, vmap_a in sa:
                pa = _pullback(x, hmap_a, vmap_a, gam)
                if not pa:
                    continue
                for kept_b, hmap_b, vmap_b in sb:
                    if kept_a | kept_b != full:
                        continue
                    pb = _pullback(y, hmap_b, vmap_b, gam)
                    poly = _poly_mul(_poly_mul(pa, pb, gam), _excess(gam, sorted(kept_a & kept_b)), gam)
                    for (psi, kap), c in poly.items():
                        dg = DecoratedGraph(gam, psi, kap).canonical()
                        out[dg] += c * weight
    return tuple((dg, c) for dg, c in sorted(out.items()) if c)


def multiply(x: TautClass, y: TautClass) -> TautClass:
    """Product in the strata algebra.

    Sums over generic common degenerations of each pair of terms, pulling
    both decorations back and inserting (-psi' - psi'') for each shared edge.
    Terms above the dimension of the ambient space vanish and are dropped.
    """
    x._check(y)
    acc: dict[DecoratedGraph, Fraction] = defaultdict(Fraction)
    for dx, cx in x.terms.items():
        for dy, cy in y.terms.items():
            for dg, c in _multiply_terms(dx, dy, x.g, x.n):
                acc[dg] += cx * cy * c
    return TautClass(x.g, x.n, acc)


def pair(x: TautClass, y: TautClass) -> Fraction:
    """evaluate(multiply(x, y)), skipping term pairs that cannot reach top degree."""
    x._check(y)
    dim = x.dim
    total = Fraction(0)
    for dx, cx in x.terms.items():
        for dy, cy in y.terms.items():
            if dx.degree + dy.degree != dim:
                continue
            for dg, c in _multiply_terms(dx, dy, x.g, x.n):
                total += cx * cy * c * _term_integral(dg)
    return total


# --- pushforwards --------------------------------------------------------

def push_zeta(graph: StableGraph, vertex_classes: Sequence[TautClass]) -> TautClass:
    """Pushforward of an exterior product of vertex classes along the gluing map of ``graph``.

    The class at vertex v lives on Mbar_{g(v), n(v)}; its marking j is the
    j-th half-edge of ``graph.legs[v]``.
    """
    graph.validate()
    if len(vertex_classes) != graph.num_vertices:
        raise ValueError("need one class per vertex")
    for v, cls in enumerate(vertex_classes):
        if (cls.g, cls.n) != (graph.genera[v], graph.valence(v)):
            raise ValueError(f"vertex {v} needs a class on ({graph.genera[v]}, {graph.valence(v)}),"
                             f" got ({cls.g}, {cls.n})")
    g, n = graph.genus, graph.n
    acc: dict[DecoratedGraph, Fraction] = defaultdict(Fraction)
    for combo in product(*(list(cls.terms.items()) for cls in vertex_classes)):
        dg = _graft(graph, [t for t, _ in combo])
        scale = Fraction(automorphism_count(dg.graph))
        for t, c in combo:
            scale *= c / automorphism_count(t.graph)
        acc[dg.canonical()] += scale
    return TautClass(g, n, acc)


def _graft(graph: StableGraph, pieces: Sequence[DecoratedGraph]) -> DecoratedGraph:
    fresh = max([h for hs in graph.legs for h in hs], default=0) + 1
    genera, legs, edges = [], [], list(graph.edges)
    psi: dict[int, int] = {}
    kappa = []
    for v, piece in enumerate(pieces):
        pg = piece.graph
        rename = {j + 1: h for j, h in enumerate(graph.legs[v])}
        for hs in pg.legs:
            for h in hs:
                if h not in rename:
                    rename[h] = fresh
                    fresh += 1
        for w in range(pg.num_vertices):
            genera.append(pg.genera[w])
            legs.append(tuple(rename[h] for h in pg.legs[w]))
            kappa.append(piece.kappa[w])
        edges.extend((rename[a], rename[b]) for a, b in pg.edges)
        for h, e in piece.psi:
            psi[rename[h]] = psi.get(rename[h], 0) + e
    new = StableGraph(tuple(genera), tuple(legs), tuple(edges))
    return DecoratedGraph.make(new, psi, kappa)


def push_glue_loop(x: TautClass) -> TautClass:
    """Pushforward along the map gluing the last two markings into a non-separating node."""
    if x.n < 2:
        raise ValueError("gluing needs at least two markings")
    acc: dict[DecoratedGraph, Fraction] = defaultdict(Fraction)
    for dg, c in x.terms.items():
        glued = glue_loop(dg.graph)
        scale = Fraction(automorphism_count(glued), automorphism_count(dg.graph))
        acc[DecoratedGraph(glued, dg.psi, dg.kappa).canonical()] += c * scale
    return TautClass(x.g + 1, x.n - 2, acc)


# --- spanning sets -------------------------------------------------------

def _partitions(m: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    if m == 0:
        yield ()
        return
    top = m if max_part is None else min(m, max_part)
    for first in range(top, 0, -1):
        for rest in _partitions(m - first, first):
            yield (first,) + rest


def _compositions(total: int, slots: int) -> Iterator[tuple[int, ...]]:
    if slots == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, slots - 1):
            yield (first,) + rest


def _vertex_decorations(graph: StableGraph, v: int, d: int) -> Iterator[tuple[tuple, tuple]]:
    hs = graph.legs[v]
    for kdeg in range(d + 1):
        for kap in _partitions(kdeg):
            for psi in _compositions(d - kdeg, len(hs)):
                yield tuple((h, e) for h, e in zip(hs, psi) if e), tuple(sorted(kap))


@lru_cache(maxsize=None)
def decorated_strata(g: int, n: int, d: int) -> tuple[DecoratedGraph, ...]:
    """All psi/kappa-decorated strata of degree d on Mbar_{g,n}, up to isomorphism.

    Decorations exceeding the dimension of a vertex moduli space are omitted
    (those classes vanish).
    """
    found = set()
    for e in range(min(d, 3 * g - 3 + n) + 1):
        for gam in stable_graphs(g, n, e):
            dims = [gam.vertex_dim(v) for v in range(gam.num_vertices)]
            for split in _compositions(d - e, gam.num_vertices):
                if any(s > dv for s, dv in zip(split, dims)):
                    continue
                per_vertex = [list(_vertex_decorations(gam, v, s)) for v, s in enumerate(split)]
                for choice in product(*per_vertex):
                    psi = {h: e2 for p, _ in choice for h, e2 in p}
                    kappa = [k for _, k in choice]
                    found.add(DecoratedGraph.make(gam, psi, kappa).canonical())
    return tuple(sorted(found))
