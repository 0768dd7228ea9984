"""Ramification data and enumeration of weighted banana graphs.

A banana graph has two vertices v1, v2 and every edge joins them.  Vertex 0
of the stored graph is v1; edge t consists of half-edge ``n+1+2t`` at v1 and
``n+2+2t`` at v2, oriented from v1 to v2.  Edge weights are stored in that
orientation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import prod
from typing import Iterator, Sequence

from .graphs import StableGraph, automorphism_count

__all__ = [
    "RamificationInput",
    "BananaDatum",
    "InvalidInput",
    "b_bound",
    "b_range",
    "enumerate_bananas",
    "banana_graph",
]

THEOREM = "theorem"
PROPOSITION = "proposition"


class InvalidInput(ValueError):
    """Ramification data violating sum(A) = k(2g-2+n) or the length rules."""


@dataclass(frozen=True)
class RamificationInput:
    """Ramification vector A with twist k on Mbar_{g,n}.

    ``A`` has length n, or length n-2 when (g, n) is the space before gluing
    markings n-1 and n; in that case A describes the glued space
    Mbar_{g+1,n-2}.  Both readings share the identity sum(A) = k(2g-2+n).
    """

    g: int
    n: int
    A: tuple[int, ...]
    k: int = 0

    def __post_init__(self):
        object.__setattr__(self, "A", tuple(int(a) for a in self.A))
        if self.g < 0 or self.n < 0 or 2 * self.g - 2 + self.n <= 0:
            raise InvalidInput(f"(g, n) = ({self.g}, {self.n}) is unstable")
        if len(self.A) not in (self.n, self.n - 2):
            raise InvalidInput(f"A has length {len(self.A)}; expected n = {self.n} or n-2 = {self.n - 2}")
        target = self.k * (2 * self.g - 2 + self.n)
        if sum(self.A) != target:
            raise InvalidInput(
                f"sum(A) = k(2g-2+n) violated: sum(A) = {sum(self.A)}, "
                f"k(2g-2+n) = {self.k}*({2 * self.g - 2 + self.n}) = {target}")

    @property
    def is_small(self) -> bool:
        """True when A lives on the glued space and markings n-1, n are the glue legs."""
        return len(self.A) == self.n - 2

    def glued(self) -> "RamificationInput":
        if not self.is_small:
            raise InvalidInput("input already lives on the glued space")
        return RamificationInput(self.g + 1, self.n - 2, self.A, self.k)

    def small(self) -> "RamificationInput":
        if self.is_small:
            return self
        return RamificationInput(self.g - 1, self.n + 2, self.A, self.k)


def b_bound(inp: RamificationInput) -> int:
    """N = sum of positive a_i + |k|(2g-2+n); the banana set is empty for b != 0, |b| >= N."""
    return sum(a for a in inp.A if a > 0) + abs(inp.k) * (2 * inp.g - 2 + inp.n)


def b_range(inp: RamificationInput) -> list[int]:
    """Values of b to sum over: |b| < N together with b = 0."""
    N = b_bound(inp)
    return sorted(set(range(-N + 1, N)) | {0})


@dataclass(frozen=True)
class BananaDatum:
    graph: StableGraph
    weights: tuple[int, ...]
    b: int | None
    s: int
    aut: int
    c1: tuple[int, ...] = field(repr=False)
    c2: tuple[int, ...] = field(repr=False)

    @property
    def genera(self) -> tuple[int, int]:
        return self.graph.genera[0], self.graph.genera[1]

    @property
    def legs1(self) -> tuple[int, ...]:
        return tuple(h for h in self.graph.legs[0] if h <= self.graph.n)

    @property
    def legs2(self) -> tuple[int, ...]:
        return tuple(h for h in self.graph.legs[1] if h <= self.graph.n)

    @property
    def multiplicity(self) -> Fraction:
        """prod |b_e| / |Aut(G, B)|."""
        return Fraction(prod(abs(w) for w in self.weights), self.aut)

    def sort_key(self):
        return (self.b if self.b is not None else 0, self.graph, self.weights)


def banana_graph(n: int, g1: int, g2: int, legs1: Sequence[int], legs2: Sequence[int],
                 num_edges: int) -> StableGraph:
    h1 = [n + 1 + 2 * t for t in range(num_edges)]
    h2 = [n + 2 + 2 * t for t in range(num_edges)]
    return StableGraph((g1, g2), (tuple(sorted(legs1)) + tuple(h1), tuple(sorted(legs2)) + tuple(h2)),
                       tuple(zip(h1, h2)))


def _partitions(total: int, parts: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Non-increasing tuples of `parts` positive integers summing to total."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    top = total - (parts - 1) if largest is None else min(largest, total - (parts - 1))
    for first in range(top, 0, -1):
        for rest in _partitions(total - first, parts - 1, first):
            yield (first,) + rest


def _splits(g: int, num_edges: int) -> Iterator[tuple[int, int]]:
    rest = g - num_edges + 1
    for g1 in range(rest + 1):
        yield g1, rest - g1


def _leg_subsets(legs: Sequence[int]) -> Iterator[tuple[int, ...]]:
    for size in range(len(legs) + 1):
        yield from combinations(legs, size)


def _charges(graph: StableGraph, leg_values: dict[int, int], weights: Sequence[int], v: int) -> tuple[int, ...]:
    n = graph.n
    sign = 1 if v == 0 else -1
    out = []
    for h in graph.legs[v]:
        if h <= n:
            out.append(leg_values[h])
        else:
            out.append(sign * weights[(h - n - 1) // 2])
    return tuple(out)


def _datum(graph, weights, b, s, leg_values) -> BananaDatum:
    n = graph.n
    hdec = {n + 1 + 2 * t: w for t, w in enumerate(weights)}
    aut = automorphism_count(graph, hdec)
    return BananaDatum(graph, tuple(weights), b, s, aut,
                       _charges(graph, leg_values, weights, 0), _charges(graph, leg_values, weights, 1))


def enumerate_bananas(inp: RamificationInput, b: int | None = None, mode: str = THEOREM,
                      include_neutral: bool = False) -> list[BananaDatum]:
    """Weighted banana graphs up to isomorphism, each with its automorphism count.

    theorem mode: (g, n) is the space before gluing, A has length n-2, leg n-1
    sits on v1 and leg n on v2; edge weights sum to
    -b - sum_{L(v1)} a_i + k(2g(v1)-2+n(v1)) and share the sign of b (positive
    for b = 0).

    proposition mode: A has length n, the vertices are ordered, weights are
    positive with sum -sum_{L(v1)} a_i + k(2g(v1)-2+n(v1)), and s is -1 when
    leg n-1 is on v1 and leg n on v2, +1 for the reverse, 0 otherwise.  Data
    with s = 0 are omitted unless include_neutral is set.
    """
    if mode == THEOREM:
        if not inp.is_small:
            inp = inp.small()
        if b is None:
            raise ValueError("theorem mode needs a value of b")
        out = _theorem_bananas(inp, b)
    elif mode == PROPOSITION:
        if inp.is_small:
            raise InvalidInput("proposition mode needs A of length n")
        out = _proposition_bananas(inp, include_neutral)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return sorted(out, key=BananaDatum.sort_key)


def _theorem_bananas(inp: RamificationInput, b: int) -> list[BananaDatum]:
    g, n, A, k = inp.g, inp.n, inp.A, inp.k
    leg_values = {i + 1: a for i, a in enumerate(A)}
    leg_values[n - 1], leg_values[n] = b, -b
    free = list(range(1, n - 1))
    out = []
    for m in range(1, g + 2):
        for g1, g2 in _splits(g, m):
            for part in _leg_subsets(free):
                legs1 = part + (n - 1,)
                legs2 = tuple(i for i in free if i not in part) + (n,)
                n1, n2 = len(legs1) + m, len(legs2) + m
                if 2 * g1 - 2 + n1 <= 0 or 2 * g2 - 2 + n2 <= 0:
                    continue
                total = -b - sum(leg_values[i] for i in part) + k * (2 * g1 - 2 + n1)
                sign = 1 if b >= 0 else -1
                if total * sign <= 0:
                    continue
                graph = banana_graph(n, g1, g2, legs1, legs2, m)
                for ws in _partitions(sign * total, m):
                    out.append(_datum(graph, tuple(sign * w for w in ws), b, 0, leg_values))
    return out


def _proposition_bananas(inp: RamificationInput, include_neutral: bool) -> list[BananaDatum]:
    g, n, A, k = inp.g, inp.n, inp.A, inp.k
    leg_values = {i + 1: a for i, a in enumerate(A)}
    legs = list(range(1, n + 1))
    out = []
    for m in range(1, g + 2):
        for g1, g2 in _splits(g, m):
            for part in _leg_subsets(legs):
                legs1 = part
                legs2 = tuple(i for i in legs if i not in part)
                if n - 1 in legs1 and n in legs2:
                    s = -1
                elif n - 1 in legs2 and n in legs1:
                    s = 1
                else:
                    s = 0
                if s == 0 and not include_neutral:
                    continue
                n1, n2 = len(legs1) + m, len(legs2) + m
                if 2 * g1 - 2 + n1 <= 0 or 2 * g2 - 2 + n2 <= 0:
                    continue
                total = -sum(leg_values[i] for i in legs1) + k * (2 * g1 - 2 + n1)
                if total <= 0:
                    continue
                graph = banana_graph(n, g1, g2, legs1, legs2, m)
                for ws in _partitions(total, m):
                    out.append(_datum(graph, ws, None, s, leg_values))
    return out
