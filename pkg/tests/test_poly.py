from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ruminalg.errors import DimensionError
from ruminalg.poly import Poly

X1, Y1, Z = (Poly.variable(3, i) for i in range(3))


def test_product_of_conjugates():
    assert (X1 + Y1) * (X1 - Y1) == X1 * X1 - Y1 * Y1


def test_zero_absorbs():
    p = X1 * Y1 + Poly.constant(3, Fraction(5, 7))
    assert (p * Poly.zero(3)).is_zero()
    assert (p * Poly.zero(3)) == Poly.zero(3)


def test_rational_normalization():
    half = X1.scale(Fraction(1, 2))
    assert half + half == X1


def test_zero_is_empty_map():
    assert (X1 - X1).terms == {}


def test_derivative_examples():
    assert (Z * Z).deriv(2) == Z.scale(2)
    assert Y1.deriv(0).is_zero()
    assert (X1 * Y1 * Y1).deriv(1) == (X1 * Y1).scale(2)


def test_dimension_errors():
    with pytest.raises(DimensionError):
        X1 + Poly.variable(5, 0)
    with pytest.raises(DimensionError):
        X1.deriv(3)
    with pytest.raises(DimensionError):
        Poly.variable(3, 7)


def test_constant_queries():
    c = Poly.constant(3, Fraction(-3, 4))
    assert c.is_constant() and c.constant_value() == Fraction(-3, 4)
    assert not (X1 + c).is_constant()
    with pytest.raises(ValueError):
        (X1 + c).constant_value()
    assert Poly.zero(3).constant_value() == 0


exponents = st.tuples(*(st.integers(0, 3) for _ in range(3)))
rationals = st.fractions(min_value=-9, max_value=9, max_denominator=12)
polys = st.dictionaries(exponents, rationals, max_size=4).map(lambda d: Poly(3, d))


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * q == q * p
    assert p + q == q + p
    assert p * (q + r) == p * q + p * r


@settings(max_examples=60, deadline=None)
@given(polys)
def test_additive_inverse_is_canonical(p):
    assert (p + (-p)).terms == {}


@settings(max_examples=60, deadline=None)
@given(polys, polys, st.integers(0, 2))
def test_leibniz_rule(p, q, var):
    assert (p * q).deriv(var) == p.deriv(var) * q + p * q.deriv(var)


@settings(max_examples=40, deadline=None)
@given(polys, rationals)
def test_scaling_distributes(p, c):
    assert p.scale(c) + p.scale(-c) == Poly.zero(3)
    assert p.add_scaled(p, c) == p + p.scale(c)
