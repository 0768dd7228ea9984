"""Exact psi/kappa intersection numbers on moduli spaces of stable curves."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

__all__ = ["psi_correlator", "vertex_integral", "double_factorial"]


def double_factorial(m: int) -> int:
    """m!! with the convention (-1)!! = 1."""
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


def psi_correlator(g: int, exponents: Sequence[int]) -> Fraction:
    """Witten-Kontsevich number <tau_{a_1} ... tau_{a_n}>_g.

    Zero unless the exponents sum to 3g-3+n.  Computed from the string and
    dilaton equations and the DVV (Virasoro) recursion; memoised on the
    sorted exponent vector.
    """
    exps = tuple(sorted(int(a) for a in exponents))
    return _wk(int(g), exps)


@lru_cache(maxsize=None)
def _wk(g: int, exps: tuple[int, ...]) -> Fraction:
    n = len(exps)
    if g < 0 or 2 * g - 2 + n <= 0:
        return Fraction(0)
    if exps and exps[0] < 0:
        return Fraction(0)
    if sum(exps) != 3 * g - 3 + n:
        return Fraction(0)
    if g == 0 and n == 3:
        return Fraction(1)
    if g == 1 and n == 1:
        return Fraction(1, 24)
    if exps[0] == 0:
        rest = exps[1:]
        total = Fraction(0)
        for j in range(len(rest)):
            if rest[j] > 0:
                total += psi_correlator(g, rest[:j] + (rest[j] - 1,) + rest[j + 1:])
        return total
    if exps[0] == 1:
        rest = exps[1:]
        return (2 * g - 2 + len(rest)) * psi_correlator(g, rest)
    return _dvv(g, exps[-1] - 1, exps[:-1])


def _dvv(g: int, k: int, rest: tuple[int, ...]) -> Fraction:
    # (2k+3)!! <tau_{k+1} tau_S>_g expressed through smaller correlators
    total = Fraction(0)
    for j, d in enumerate(rest):
        other = rest[:j] + rest[j + 1:]
        total += Fraction(double_factorial(2 * k + 2 * d + 1), double_factorial(2 * d - 1)) \
            * psi_correlator(g, other + (d + k,))
    split = Fraction(0)
    idx = range(len(rest))
    for r in range(k):
        s = k - 1 - r
        w = double_factorial(2 * r + 1) * double_factorial(2 * s + 1)
        split += w * psi_correlator(g - 1, rest + (r, s))
        for size in range(len(rest) + 1):
            for part in combinations(idx, size):
                left = tuple(rest[i] for i in part)
                right = tuple(rest[i] for i in idx if i not in part)
                for g1 in range(g + 1):
                    a = psi_correlator(g1, left + (r,))
                    if a:
                        split += w * a * psi_correlator(g - g1, right + (s,))
    total += split / 2
    return total / double_factorial(2 * k + 3)


def vertex_integral(g: int, psi: Sequence[int], kappa: Sequence[int] = ()) -> Fraction:
    """Integral of prod psi_i^{psi[i]} * prod kappa_{b} over Mbar_{g,n}, n = len(psi).

    kappa_b is the pushforward of psi_{n+1}^{b+1} along the forgetful map;
    kappa monomials are removed one at a time by passing to Mbar_{g,n+1}.
    """
    return _vertex_integral(int(g), tuple(int(a) for a in psi), tuple(sorted(int(b) for b in kappa)))


@lru_cache(maxsize=None)
def _vertex_integral(g: int, psi: tuple[int, ...], kappa: tuple[int, ...]) -> Fraction:
    n = len(psi)
    if 2 * g - 2 + n <= 0:
        return Fraction(0)
    if sum(psi) + sum(kappa) != 3 * g - 3 + n:
        return Fraction(0)
    if not kappa:
        return psi_correlator(g, psi)
    *others, last = kappa
    total = Fraction(0)
    # kappa_b on Mbar_{g,n+1} equals pi^* kappa_b + psi_{n+1}^b
    for size in range(len(others) + 1):
        for part in combinations(range(len(others)), size):
            extra = sum(others[i] for i in part)
            remaining = tuple(others[i] for i in range(len(others)) if i not in part)
            term = _vertex_integral(g, psi + (last + 1 + extra,), remaining)
            total += term if size % 2 == 0 else -term
    return total
