from fractions import Fraction as F

import pytest

from drsplit.intersection import double_factorial, psi_correlator, vertex_integral

# Witten-Kontsevich numbers tabulated in the literature.
CORRELATORS = [
    (0, (0, 0, 0), F(1)),
    (0, (0, 0, 0, 1), F(1)),
    (0, (1, 1, 0, 0, 0), F(2)),
    (0, (2, 0, 0, 0, 0), F(1)),
    (1, (1,), F(1, 24)),
    (1, (1, 1), F(1, 24)),
    (2, (4,), F(1, 1152)),
    (2, (2, 3), F(29, 5760)),
    (2, (2, 2, 2), F(7, 240)),
    (3, (7,), F(1, 82944)),
    (3, (6, 2), F(77, 414720)),
]


@pytest.mark.parametrize("g,exps,value", CORRELATORS)
def test_known_correlators(g, exps, value):
    assert psi_correlator(g, exps) == value


@pytest.mark.parametrize("g", range(1, 6))
def test_one_point(g):
    from math import factorial
    assert psi_correlator(g, (3 * g - 2,)) == F(1, 24 ** g * factorial(g))


def test_genus_zero_multinomial():
    from math import factorial
    exps = (2, 1, 0, 0, 0, 0)
    expected = F(factorial(len(exps) - 3), factorial(2))
    assert psi_correlator(0, exps) == expected


def test_wrong_degree_is_zero():
    assert psi_correlator(1, (2,)) == 0
    assert psi_correlator(0, (0, 0)) == 0


def test_symmetry():
    assert psi_correlator(2, (3, 2)) == psi_correlator(2, (2, 3))


# kappa integrals: int_{1,1} kappa_1 = 1/24, int_{0,4} kappa_1 = 1,
# int_{2,0} kappa_3 = 1/1152, int_{0,5} kappa_1^2 = 5, int_{0,5} kappa_2 = 1.
@pytest.mark.parametrize("g,psi,kappa,value", [
    (1, (1,), (), F(1, 24)),
    (0, (0, 0, 0), (1,), F(0)),
    (1, (0,), (1,), F(1, 24)),
    (0, (0, 0, 0, 0), (1,), F(1)),
    (2, (), (3,), F(1, 1152)),
    (0, (0,) * 5, (1, 1), F(5)),
    (0, (0,) * 5, (2,), F(1)),
])
def test_vertex_integral(g, psi, kappa, value):
    assert vertex_integral(g, psi, kappa) == value


def test_double_factorial():
    assert [double_factorial(m) for m in (-1, 0, 1, 5, 6)] == [1, 1, 1, 15, 48]
