"""Polynomial algebra over binary variables."""

import random
from fractions import Fraction

import pytest

from adiafact import Monomial, Poly, VarId


def test_varid_ordering_is_p_then_q_then_carries():
    ordered = [VarId.p(1), VarId.p(2), VarId.q(1), VarId.q(3), VarId.carry(1, 2), VarId.carry(2, 3)]
    assert sorted(reversed(ordered)) == ordered


def test_varid_str_roundtrip():
    for var in (VarId.p(1), VarId.q(12), VarId.carry(3, 5)):
        assert VarId.parse(str(var)) == var
    with pytest.raises(ValueError):
        VarId.parse("x3")
    with pytest.raises(ValueError):
        VarId.carry(4, 2)


def test_monomial_is_sorted_and_squarefree():
    x, y = VarId.p(1), VarId.q(1)
    assert Monomial((y, x, y)) == Monomial((x, y))
    assert Monomial((x,)) * Monomial((x, y)) == Monomial((x, y))
    assert Monomial().degree == 0


def test_idempotent_square():
    x = Poly.variable(VarId.p(1))
    assert x * x == x
    assert (2 * x) ** 3 == 8 * x


def test_arithmetic_matches_pointwise_evaluation():
    rng = random.Random(7)
    variables = [VarId.p(1), VarId.p(2), VarId.q(1)]

    def random_poly():
        terms = []
        for _ in range(rng.randint(1, 6)):
            mono = Monomial(rng.sample(variables, rng.randint(0, 3)))
            terms.append((mono, Fraction(rng.randint(-4, 4), rng.randint(1, 3))))
        return Poly(terms)

    for _ in range(50):
        a, b = random_poly(), random_poly()
        for bits in range(8):
            point = {v: (bits >> i) & 1 for i, v in enumerate(variables)}
            assert (a + b).evaluate(point) == a.evaluate(point) + b.evaluate(point)
            assert (a * b).evaluate(point) == a.evaluate(point) * b.evaluate(point)
            assert (a - b).evaluate(point) == a.evaluate(point) - b.evaluate(point)
            assert (-a).evaluate(point) == -a.evaluate(point)


def test_zero_coefficients_vanish():
    x = Poly.variable(VarId.p(1))
    assert not (x - x)
    assert len(x + 1 - x) == 1
    assert Poly.constant(0) == Poly()


def test_substitute_fixes_values():
    x, y = VarId.p(1), VarId.q(1)
    poly = Poly.variable(x) * Poly.variable(y) + 2 * Poly.variable(x) - 1
    assert poly.substitute({x: 1}) == Poly.variable(y) + 1
    assert poly.substitute({x: 0}) == Poly.constant(-1)
    assert poly.substitute({}) == poly


def test_bounds_treat_monomials_independently():
    x, y = VarId.p(1), VarId.q(1)
    poly = Poly.variable(x) + Poly.variable(y) - 2 * Poly.variable(x) * Poly.variable(y) - 1
    lo, hi = poly.bounds()
    assert lo == -3 and hi == 1
    # the true range is narrower; the bound must contain it
    values = [
        poly.evaluate({x: a, y: b}) for a in (0, 1) for b in (0, 1)
    ]
    assert lo <= min(values) and max(values) <= hi


def test_without_monomials_drops_supersets_only():
    x, y, z = VarId.p(1), VarId.q(1), VarId.carry(1, 2)
    poly = (
        Poly.variable(x) * Poly.variable(y)
        + Poly.variable(x) * Poly.variable(y) * Poly.variable(z)
        + Poly.variable(x)
        + 1
    )
    stripped = poly.without_monomials(frozenset((x, y)))
    assert stripped == Poly.variable(x) + 1


def test_canonical_term_order_is_degree_then_lex():
    x, y = VarId.p(1), VarId.q(1)
    poly = Poly.variable(x) * Poly.variable(y) + Poly.variable(y) + Poly.variable(x) - 5
    monomials = [mono for mono, _ in poly.items()]
    assert monomials == [Monomial(), Monomial((x,)), Monomial((y,)), Monomial((x, y))]


def test_variables_and_degree():
    x, y = VarId.p(1), VarId.q(2)
    poly = Poly.variable(x) * Poly.variable(y) + 3
    assert poly.variables() == (x, y)
    assert poly.degree == 2
    assert Poly.constant(4).degree == 0
