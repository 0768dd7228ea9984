"""Stable graphs: validation, canonical labelling, automorphisms, enumeration.

A stable graph is stored as a tuple of vertex genera, the half-edges sitting
at each vertex, and the edges as pairs of half-edges.  Half-edges that are not
part of an edge are the legs; they must be labelled ``1..n`` and are never
permuted by isomorphisms.  Internal half-edges carry arbitrary distinct
integer labels (canonical graphs use ``n+1, n+2, ...``).

Decorations (psi exponents, edge weights, kappa monomials, ...) are passed as
a half-edge map ``hdec`` and a per-vertex tuple ``vdec`` so that the same
canonicalisation and automorphism machinery serves every caller.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from math import factorial
from typing import Hashable, Iterator, Mapping, Sequence

__all__ = [
    "StableGraph",
    "CanonicalForm",
    "canonical_form",
    "automorphism_count",
    "automorphisms",
    "stable_graphs",
    "enumerate_stable_graphs",
    "glue_loop",
    "trivial_graph",
]


class UnstableError(ValueError):
    """Raised for an unstable type (g, n) or an unstable vertex."""


@dataclass(frozen=True, order=True)
class StableGraph:
    genera: tuple[int, ...]
    legs: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...] = ()

    @classmethod
    def build(cls, genera: Sequence[int], legs: Sequence[Sequence[int]],
              edges: Sequence[Sequence[int]] = ()) -> "StableGraph":
        graph = cls(tuple(int(x) for x in genera),
                    tuple(tuple(int(h) for h in hs) for hs in legs),
                    tuple((int(a), int(b)) for a, b in edges))
        graph.validate()
        return graph

    # --- basic accessors -------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return len(self.genera)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def h1(self) -> int:
        return self.num_edges - self.num_vertices + 1

    @property
    def genus(self) -> int:
        return sum(self.genera) + self.h1

    def internal_halfedges(self) -> frozenset[int]:
        return frozenset(h for e in self.edges for h in e)

    def markings(self) -> tuple[int, ...]:
        internal = self.internal_halfedges()
        return tuple(sorted(h for hs in self.legs for h in hs if h not in internal))

    @property
    def n(self) -> int:
        return len(self.markings())

    def vertex_of(self, h: int) -> int:
        for v, hs in enumerate(self.legs):
            if h in hs:
                return v
        raise KeyError(h)

    def vertex_map(self) -> dict[int, int]:
        return {h: v for v, hs in enumerate(self.legs) for h in hs}

    def valence(self, v: int) -> int:
        return len(self.legs[v])

    def vertex_dim(self, v: int) -> int:
        return 3 * self.genera[v] - 3 + len(self.legs[v])

    def dim(self) -> int:
        return 3 * self.genus - 3 + self.n

    def validate(self) -> None:
        if len(self.legs) != len(self.genera) or not self.genera:
            raise ValueError("need one half-edge list per vertex and at least one vertex")
        flat = [h for hs in self.legs for h in hs]
        if len(flat) != len(set(flat)):
            raise ValueError("half-edge labels must be distinct")
        seen = set()
        for a, b in self.edges:
            if a == b or a in seen or b in seen:
                raise ValueError(f"bad edge ({a}, {b})")
            seen.update((a, b))
        if not seen <= set(flat):
            raise ValueError("edge uses a half-edge that sits at no vertex")
        marks = self.markings()
        if marks != tuple(range(1, len(marks) + 1)):
            raise ValueError(f"legs must be labelled 1..n, got {marks}")
        for v, g in enumerate(self.genera):
            if g < 0:
                raise ValueError("negative vertex genus")
            if 2 * g - 2 + len(self.legs[v]) <= 0:
                raise UnstableError(f"vertex {v} (genus {g}, valence {len(self.legs[v])}) is unstable")
        if not self._connected():
            raise ValueError("graph is not connected")

    def _connected(self) -> bool:
        vof = self.vertex_map()
        adj: dict[int, set[int]] = {v: set() for v in range(self.num_vertices)}
        for a, b in self.edges:
            adj[vof[a]].add(vof[b])
            adj[vof[b]].add(vof[a])
        stack, seen = [0], {0}
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.num_vertices

    # --- operations ------------------------------------------------------

    def canonical(self) -> "StableGraph":
        return canonical_form(self).graph

    def is_isomorphic(self, other: "StableGraph") -> bool:
        return self.canonical() == other.canonical()

    def automorphism_count(self) -> int:
        return automorphism_count(self)

    def contract(self, edge_indices) -> tuple["StableGraph", tuple[int, ...]]:
        """Contract the given edges.

        Returns the contracted graph (surviving half-edges keep their labels)
        and the map from old vertex index to new vertex index.
        """
        drop = set(edge_indices)
        parent = list(range(self.num_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        vof = self.vertex_map()
        for i in drop:
            a, b = self.edges[i]
            ra, rb = find(vof[a]), find(vof[b])
            if ra != rb:
                parent[ra] = rb
        roots = sorted({find(v) for v in range(self.num_vertices)})
        index = {r: i for i, r in enumerate(roots)}
        vmap = tuple(index[find(v)] for v in range(self.num_vertices))
        genera = [0] * len(roots)
        nverts = [0] * len(roots)
        nedges = [0] * len(roots)
        for v in range(self.num_vertices):
            genera[vmap[v]] += self.genera[v]
            nverts[vmap[v]] += 1
        dropped_h = set()
        for i in drop:
            a, b = self.edges[i]
            nedges[vmap[vof[a]]] += 1
            dropped_h.update((a, b))
        for i in range(len(roots)):
            genera[i] += nedges[i] - nverts[i] + 1
        legs: list[list[int]] = [[] for _ in roots]
        for v, hs in enumerate(self.legs):
            legs[vmap[v]].extend(h for h in hs if h not in dropped_h)
        edges = tuple(e for i, e in enumerate(self.edges) if i not in drop)
        return StableGraph(tuple(genera), tuple(tuple(sorted(hs)) for hs in legs), edges), vmap

    def glue_loop(self) -> "StableGraph":
        return glue_loop(self)


def trivial_graph(g: int, n: int) -> StableGraph:
    if g < 0 or n < 0 or 2 * g - 2 + n <= 0:
        raise UnstableError(f"(g, n) = ({g}, {n}) is unstable")
    return StableGraph((g,), (tuple(range(1, n + 1)),), ())


def glue_loop(graph: StableGraph) -> StableGraph:
    """Join legs n-1 and n into a new edge.

    The two half-edges keep their labels, so decorations carried on legs
    n-1, n land on the half-edges of the new edge.
    """
    n = graph.n
    if n < 2:
        raise ValueError("gluing needs at least two legs")
    return StableGraph(graph.genera, graph.legs, graph.edges + ((n - 1, n),))


# --- canonical labelling -------------------------------------------------

@dataclass(frozen=True)
class CanonicalForm:
    graph: StableGraph
    hdec: tuple[tuple[int, Hashable], ...]
    vdec: tuple[Hashable, ...]
    vertex_map: tuple[int, ...]          # old vertex -> canonical vertex
    halfedge_map: tuple[tuple[int, int], ...]  # (old, canonical) pairs

    def hmap(self) -> dict[int, int]:
        return dict(self.halfedge_map)


def _rank(values: list) -> list[int]:
    distinct = sorted(set(values))
    index = {v: i for i, v in enumerate(distinct)}
    return [index[v] for v in values]


def _refined_cells(graph: StableGraph, hdec: Mapping[int, Hashable], vdec: Sequence[Hashable]):
    """Colour refinement; returns (base invariants, colours, adjacency)."""
    vof = graph.vertex_map()
    internal = graph.internal_halfedges()
    base = []
    for v, hs in enumerate(graph.legs):
        marks = tuple(sorted((h, hdec.get(h, 0)) for h in hs if h not in internal))
        base.append((graph.genera[v], vdec[v], marks))
    adj: list[list[tuple[int, Hashable, Hashable]]] = [[] for _ in graph.genera]
    for a, b in graph.edges:
        u, w = vof[a], vof[b]
        da, db = hdec.get(a, 0), hdec.get(b, 0)
        adj[u].append((w, da, db))
        adj[w].append((u, db, da))
    colours = _rank([(base[v], len(adj[v])) for v in range(len(base))])
    while True:
        sig = [(colours[v], tuple(sorted((colours[w], da, db) for w, da, db in adj[v])))
               for v in range(len(base))]
        new = _rank(sig)
        if len(set(new)) == len(set(colours)):
            return base, new
        colours = new


def _edge_records(graph: StableGraph, hdec, pos, vof):
    recs = []
    for a, b in graph.edges:
        i, j = pos[vof[a]], pos[vof[b]]
        da, db = hdec.get(a, 0), hdec.get(b, 0)
        if (i, da) > (j, db) or (i == j and da == db and a > b):
            i, j, da, db, a, b = j, i, db, da, b, a
        recs.append(((i, j, da, db), a, b))
    return recs


def _orderings(colours: list[int]) -> Iterator[tuple[int, ...]]:
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colours):
        cells.setdefault(c, []).append(v)
    ordered = [cells[c] for c in sorted(cells)]
    for choice in product(*(permutations(cell) for cell in ordered)):
        yield tuple(v for part in choice for v in part)


@lru_cache(maxsize=None)
def _canonical_cached(graph: StableGraph, hdec_items: tuple, vdec: tuple) -> CanonicalForm:
    hdec = dict(hdec_items)
    vof = graph.vertex_map()
    base, colours = _refined_cells(graph, hdec, vdec)
    best = None
    for order in _orderings(colours):
        pos = [0] * len(order)
        for i, v in enumerate(order):
            pos[v] = i
        enc = tuple(sorted(r[0] for r in _edge_records(graph, hdec, pos, vof)))
        if best is None or enc < best[0]:
            best = (enc, order, pos)
    _, order, pos = best
    n = len(graph.markings())
    recs = sorted(_edge_records(graph, hdec, pos, vof))
    hmap = {h: h for h in graph.markings()}
    new_edges = []
    for t, (key, a, b) in enumerate(recs):
        ha, hb = n + 2 * t + 1, n + 2 * t + 2
        hmap[a], hmap[b] = ha, hb
        new_edges.append((ha, hb))
    new_legs = []
    for v in order:
        new_legs.append(tuple(sorted(hmap[h] for h in graph.legs[v])))
    canon = StableGraph(tuple(graph.genera[v] for v in order), tuple(new_legs), tuple(new_edges))
    new_hdec = tuple(sorted((hmap[h], d) for h, d in hdec.items()))
    new_vdec = tuple(vdec[v] for v in order)
    return CanonicalForm(canon, new_hdec, new_vdec, tuple(pos), tuple(sorted(hmap.items())))


def _normalise_decorations(graph, hdec, vdec):
    hitems = tuple(sorted((h, d) for h, d in (hdec or {}).items() if d != 0))
    if vdec is None:
        vdec = tuple(() for _ in graph.genera)
    return hitems, tuple(vdec)


def canonical_form(graph: StableGraph, hdec: Mapping[int, Hashable] | None = None,
                   vdec: Sequence[Hashable] | None = None) -> CanonicalForm:
    """Canonical representative of a (decorated) graph, legs fixed pointwise.

    Two decorated graphs are isomorphic iff their canonical forms agree.  Half
    -edge decorations equal to 0 are treated as absent.
    """
    hitems, vdec = _normalise_decorations(graph, hdec, vdec)
    return _canonical_cached(graph, hitems, vdec)


# --- automorphisms -------------------------------------------------------

def _lift_groups(graph, hdec, vof):
    groups: dict[tuple, list[tuple[int, int]]] = {}
    for a, b in graph.edges:
        u, w = vof[a], vof[b]
        da, db = hdec.get(a, 0), hdec.get(b, 0)
        if (u, da) > (w, db):
            u, w, da, db, a, b = w, u, db, da, b, a
        groups.setdefault((u, w, da, db), []).append((a, b))
    return groups


def _vertex_automorphisms(graph, hdec, vdec):
    vof = graph.vertex_map()
    _, colours = _refined_cells(graph, hdec, vdec)
    groups = _lift_groups(graph, hdec, vof)
    sizes = {k: len(v) for k, v in groups.items()}
    ref = next(_orderings(colours))
    for order in _orderings(colours):
        # cell-preserving permutation sending ref[i] to order[i]
        sigma = [0] * len(order)
        for x, y in zip(ref, order):
            sigma[x] = y
        mapped: dict[tuple, int] = {}
        for (u, w, da, db), cnt in sizes.items():
            su, sw = sigma[u], sigma[w]
            key = (su, sw, da, db) if (su, da) <= (sw, db) else (sw, su, db, da)
            mapped[key] = mapped.get(key, 0) + cnt
        if mapped == sizes:
            yield tuple(sigma), groups


def automorphism_count(graph: StableGraph, hdec: Mapping[int, Hashable] | None = None,
                       vdec: Sequence[Hashable] | None = None) -> int:
    """Order of the automorphism group fixing legs and preserving decorations.

    Swapping the two half-edges of a loop counts as an automorphism whenever
    it preserves the half-edge decorations.
    """
    hitems, vdec = _normalise_decorations(graph, hdec, vdec)
    return _aut_count_cached(graph, hitems, vdec)


@lru_cache(maxsize=None)
def _aut_count_cached(graph, hitems, vdec) -> int:
    hdec = dict(hitems)
    total = 0
    lift = None
    for _, groups in _vertex_automorphisms(graph, hdec, vdec):
        if lift is None:
            lift = 1
            for (u, w, da, db), es in groups.items():
                lift *= factorial(len(es))
                if u == w and da == db:
                    lift *= 2 ** len(es)
        total += 1
    return total * lift


def automorphisms(graph: StableGraph, hdec: Mapping[int, Hashable] | None = None,
                  vdec: Sequence[Hashable] | None = None) -> list[tuple[dict[int, int], tuple[int, ...]]]:
    """All automorphisms as (half-edge permutation, vertex permutation)."""
    hitems, vdec = _normalise_decorations(graph, hdec, vdec)
    return _automorphisms_cached(graph, hitems, vdec)


@lru_cache(maxsize=None)
def _automorphisms_cached(graph, hitems, vdec):
    hdec = dict(hitems)
    marks = graph.markings()
    out = []
    for sigma, groups in _vertex_automorphisms(graph, hdec, vdec):
        per_group = []
        for (u, w, da, db), es in groups.items():
            su, sw = sigma[u], sigma[w]
            if (su, da) <= (sw, db):
                target = groups[(su, sw, da, db)]
                flipped = False
            else:
                target = groups[(sw, su, db, da)]
                flipped = True
            options = []
            for perm in permutations(target):
                flips_allowed = [u == w and da == db] * len(es)
                for flips in product(*((False, True) if f else (False,) for f in flips_allowed)):
                    m = {}
                    for (a, b), (c, d), fl in zip(es, perm, flips):
                        if flipped != fl:
                            c, d = d, c
                        m[a], m[b] = c, d
                    options.append(m)
            per_group.append(options)
        for combo in product(*per_group):
            hmap = {h: h for h in marks}
            for m in combo:
                hmap.update(m)
            out.append((hmap, sigma))
    return out


# --- enumeration ---------------------------------------------------------

def _degenerations(graph: StableGraph) -> Iterator[StableGraph]:
    fresh = max([h for hs in graph.legs for h in hs], default=0) + 1
    h1, h2 = fresh, fresh + 1
    for v, g in enumerate(graph.genera):
        hs = graph.legs[v]
        others_g = graph.genera[:v] + graph.genera[v + 1:]
        others_l = graph.legs[:v] + graph.legs[v + 1:]
        if g >= 1:
            yield StableGraph(graph.genera[:v] + (g - 1,) + graph.genera[v + 1:],
                              graph.legs[:v] + (hs + (h1, h2),) + graph.legs[v + 1:],
                              graph.edges + ((h1, h2),))
        for size in range(len(hs) + 1):
            for part in combinations(hs, size):
                rest = tuple(h for h in hs if h not in part)
                for g1 in range(g + 1):
                    g2 = g - g1
                    if 2 * g1 - 2 + len(part) + 1 <= 0 or 2 * g2 - 2 + len(rest) + 1 <= 0:
                        continue
                    yield StableGraph(others_g + (g1, g2),
                                      others_l + (part + (h1,), rest + (h2,)),
                                      graph.edges + ((h1, h2),))


@lru_cache(maxsize=None)
def stable_graphs(g: int, n: int, num_edges: int) -> tuple[StableGraph, ...]:
    """Canonical representatives of all stable graphs of type (g, n) with the
    given number of edges, in deterministic (sorted) order."""
    if g < 0 or n < 0 or 2 * g - 2 + n <= 0:
        raise UnstableError(f"(g, n) = ({g}, {n}) is unstable")
    if num_edges < 0 or num_edges > 3 * g - 3 + n:
        return ()
    if num_edges == 0:
        return (trivial_graph(g, n),)
    found = set()
    for parent in stable_graphs(g, n, num_edges - 1):
        for child in _degenerations(parent):
            found.add(child.canonical())
    return tuple(sorted(found))


def enumerate_stable_graphs(g: int, n: int, num_edges: int) -> list[StableGraph]:
    return list(stable_graphs(g, n, num_edges))
