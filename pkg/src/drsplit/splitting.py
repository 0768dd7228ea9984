"""Banana expansion of the loop-gluing pullback of DR, and the psi/banana relation.

Both identities are checked through pairings only.  For the pullback,
``int gl^*DR(A) . T`` on the unglued space equals ``int DR(A) . gl_*T`` on
the glued space, so no pullback of classes is ever computed.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .bananas import (PROPOSITION, THEOREM, InvalidInput, RamificationInput, b_range,
                      enumerate_bananas)
from .pixton import dr_cycle, dr_pair
from .strata import (DecoratedGraph, TautClass, decorated_strata, evaluate, multiply, pair,
                     psi_class, push_glue_loop, push_zeta)
from .tropical import boundary_sign

__all__ = [
    "banana_sum",
    "relation_lhs",
    "verify_splitting",
    "verify_relation",
    "spanning_classes",
    "SplittingReport",
    "PairingRecord",
    "calibrate_relation_sign",
    "relation_sign",
]


@dataclass(frozen=True)
class PairingRecord:
    test: DecoratedGraph
    lhs: Fraction
    rhs: Fraction

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


@dataclass
class SplittingReport:
    kind: str
    input: RamificationInput
    records: list[PairingRecord]
    conventions: dict = field(default_factory=dict)
    runtime: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.equal for r in self.records)

    @property
    def failures(self) -> list[PairingRecord]:
        return [r for r in self.records if not r.equal]


def _small(inp: RamificationInput) -> RamificationInput:
    return inp if inp.is_small else inp.small()


def banana_sum(inp: RamificationInput) -> TautClass:
    """sum_b sum_{(G,B)} prod|b_e| / |Aut(G,B)| * xi_{G*}(DR(C1) x DR(C2)) on the unglued space."""
    inp = _small(inp)
    return _banana_sum(inp)


@lru_cache(maxsize=None)
def _banana_sum(inp: RamificationInput) -> TautClass:
    total = TautClass.zero(inp.g, inp.n)
    for b in b_range(inp):
        for datum in enumerate_bananas(inp, b, THEOREM):
            total = total + datum.multiplicity * _banana_term(datum, inp.k)
    return total


def _banana_term(datum, k: int) -> TautClass:
    graph = datum.graph
    (g1, g2), (n1, n2) = datum.genera, (graph.valence(0), graph.valence(1))
    dr1 = dr_cycle(RamificationInput(g1, n1, datum.c1, k))
    dr2 = dr_cycle(RamificationInput(g2, n2, datum.c2, k))
    return push_zeta(graph, [dr1, dr2])


def spanning_classes(g: int, n: int, degree: int) -> tuple[DecoratedGraph, ...]:
    """Spanning set of decorated strata of the given degree on Mbar_{g,n}."""
    if degree < 0 or degree > 3 * g - 3 + n:
        return ()
    return decorated_strata(g, n, degree)


def _splitting_pairing(args) -> PairingRecord:
    inp, test = args
    T = TautClass(inp.g, inp.n, [(test, 1)])
    lhs = dr_pair(inp.glued(), push_glue_loop(T))
    rhs = pair(banana_sum(inp), T)
    return PairingRecord(test, lhs, rhs)


def _relation_pairing(args) -> PairingRecord:
    inp, test, sign = args
    T = TautClass(inp.g, inp.n, [(test, 1)])
    return PairingRecord(test, pair(relation_lhs(inp, sign), T), Fraction(0))


def _run(fn, jobs_args, jobs: int) -> list[PairingRecord]:
    if jobs > 1 and len(jobs_args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, jobs_args, chunksize=max(1, len(jobs_args) // (4 * jobs))))
    return [fn(a) for a in jobs_args]


def conventions() -> dict:
    return {
        "class_convention": "[G, alpha] = xi_{G*}(alpha) / |Aut G|, Aut of the undecorated graph",
        "boundary_class": "stratum class, no automorphism factor stored",
        "relation_psi_sign": relation_sign(),
        "phi_boundary_sign": boundary_sign(),
        "balancing": "sum of outgoing slopes at v is +k(2g(v)-2+n(v))",
    }


def verify_splitting(inp: RamificationInput, jobs: int = 1) -> SplittingReport:
    """Pair both sides of gl^*DR(A) = banana_sum against every test class of complementary degree.

    lhs: int DR(A) . gl_*T on the glued space; rhs: int banana_sum . T.
    """
    inp = _small(inp)
    start = time.perf_counter()
    degree = 3 * inp.g - 3 + inp.n - (inp.g + 1)
    tests = spanning_classes(inp.g, inp.n, degree)
    records = _run(_splitting_pairing, [(inp, t) for t in tests], jobs)
    report = SplittingReport("splitting", inp, records, conventions(),
                             time.perf_counter() - start)
    if not tests:
        report.notes.append(f"no test classes of degree {degree}")
    return report


def relation_lhs(inp: RamificationInput, sign: int | None = None) -> TautClass:
    """sign * (a_{n-1} psi_{n-1} - a_n psi_n) DR(A) + sum_{(G,B)} s(G) prod b_e / |Aut(G,B)| xi_{G*}(DR(C1) x DR(C2)).

    ``sign`` multiplies the psi term only; by default the calibrated sign is used.
    """
    if inp.is_small:
        raise InvalidInput("the relation needs A of length n")
    if sign is None:
        sign = relation_sign()
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return _relation_lhs(inp, sign)


@lru_cache(maxsize=None)
def _relation_lhs(inp: RamificationInput, sign: int) -> TautClass:
    g, n, A, k = inp.g, inp.n, inp.A, inp.k
    dr = dr_cycle(inp)
    psi = A[n - 2] * psi_class(g, n, n - 1) - A[n - 1] * psi_class(g, n, n)
    total = sign * multiply(psi, dr)
    for datum in enumerate_bananas(inp, mode=PROPOSITION):
        total = total + datum.s * datum.multiplicity * _banana_term(datum, k)
    return total


def verify_relation(inp: RamificationInput, jobs: int = 1, sign: int | None = None) -> SplittingReport:
    """Pair relation_lhs against every test class of complementary degree; pass iff all vanish."""
    if sign is None:
        sign = relation_sign()
    start = time.perf_counter()
    degree = 3 * inp.g - 3 + inp.n - (inp.g + 1)
    tests = spanning_classes(inp.g, inp.n, degree)
    records = _run(_relation_pairing, [(inp, t, sign) for t in tests], jobs)
    conv = conventions()
    conv["relation_psi_sign"] = sign
    return SplittingReport("relation", inp, records, conv, time.perf_counter() - start)


CALIBRATION_INPUT = RamificationInput(0, 4, (1, 1, 1, -3), 0)


def calibrate_relation_sign() -> dict[int, Fraction]:
    """Evaluate the relation on Mbar_{0,4}, A = (1,1,1,-3) for both signs of the psi term."""
    return {s: evaluate(relation_lhs(CALIBRATION_INPUT, s)) for s in (1, -1)}


@lru_cache(maxsize=None)
def relation_sign() -> int:
    """The unique sign of the psi term making the calibration relation vanish."""
    values = calibrate_relation_sign()
    good = [s for s, v in values.items() if v == 0]
    if len(good) != 1:
        raise RuntimeError(f"relation sign calibration is ambiguous: {values}")
    return good[0]
