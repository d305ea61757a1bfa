import math

import pytest
import torch
from hypothesis import given, settings
from hypothesis import strategies as st

from frontlab.errors import DivisionNearZero, NotDivisibleByV, SqrtOfNonpositive
from frontlab.geometry.jets import (
    Jet2,
    coeff_index,
    exponents,
    jet_cross,
    jet_div,
    jet_divide_by_v,
    jet_dot,
    jet_lift,
    jet_mul,
    jet_sqrt,
    num_coeffs,
)


def assert_coefficients(jet, expected, abs_tol=1e-12):
    for (i, j) in exponents(jet.order):
        assert jet.coefficient(i, j) == pytest.approx(expected.get((i, j), 0.0), abs=abs_tol), (i, j)


def test_storage_layout():
    assert num_coeffs(0) == 1
    assert num_coeffs(2) == 6
    assert exponents(2) == ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2))
    for index, (i, j) in enumerate(exponents(4)):
        assert coeff_index(i, j) == index


def test_constructor_infers_order():
    jet = Jet2(torch.zeros(10))
    assert jet.order == 3
    with pytest.raises(ValueError):
        Jet2(torch.zeros(7))


def test_lift_monomials():
    assert_coefficients(jet_lift([(1, 1, 1.0)], (0.0, 0.0), 2), {(1, 1): 1.0})
    assert_coefficients(jet_lift([(2, 0, 1.0)], (1.0, 0.0), 2), {(0, 0): 1.0, (1, 0): 2.0, (2, 0): 1.0})


def test_lift_cuspidal_component():
    jet = jet_lift([(2, 0, 1.0), (0, 3, 1 / 3)], (0.0, 0.0), 3)
    assert_coefficients(jet, {(2, 0): 1.0, (0, 3): 1 / 3})


def test_lift_truncates():
    jet = jet_lift([(3, 2, 1.0), (1, 0, 2.0)], (0.0, 0.0), 2)
    assert_coefficients(jet, {(1, 0): 2.0})


def test_partial_and_evaluate():
    jet = jet_lift([(2, 1, 3.0)], (1.0, 2.0), 3)
    # d^2/du^2 of 3u^2v at (1, 2) is 6v = 12
    assert jet.partial(2, 0) == pytest.approx(12.0)
    assert jet.partial(1, 1) == pytest.approx(6.0)
    assert jet.evaluate(0.1, -0.2) == pytest.approx(3 * 1.1**2 * 1.8)
    with pytest.raises(ValueError):
        jet.coefficient(3, 1)


def test_variable_and_derivatives():
    u = Jet2.variable("u", (0.5, 0.0), 3)
    v = Jet2.variable("v", (0.5, 0.0), 3)
    g = u * u * v
    assert g.du().value == pytest.approx(0.0)
    assert g.dv().value == pytest.approx(0.25)
    assert g.du().dv().value == pytest.approx(1.0)
    assert g.du().order == 2
    with pytest.raises(ValueError):
        Jet2.variable("w", (0.0, 0.0), 2)


def test_mixed_orders_truncate():
    a = Jet2.variable("u", (0.0, 0.0), 4)
    b = Jet2.variable("v", (0.0, 0.0), 2)
    assert (a + b).order == 2
    assert jet_mul(a, b).order == 2


def test_different_bases_rejected():
    a = Jet2.variable("u", (0.0, 0.0), 2)
    b = Jet2.variable("u", (1.0, 0.0), 2)
    with pytest.raises(ValueError):
        a + b


def test_sqrt_of_constant():
    root = jet_sqrt(Jet2.constant(4.0, (0.0, 0.0), 2))
    assert_coefficients(root, {(0, 0): 2.0})


def test_sqrt_of_perfect_square():
    square = jet_lift([(0, 0, 1.0), (1, 0, 2.0), (2, 0, 1.0)], (0.0, 0.0), 2)
    assert_coefficients(jet_sqrt(square), {(0, 0): 1.0, (1, 0): 1.0})


def test_sqrt_rejects_nonpositive():
    with pytest.raises(SqrtOfNonpositive):
        jet_sqrt(Jet2.constant(0.0, (0.0, 0.0), 2))
    with pytest.raises(SqrtOfNonpositive):
        Jet2.constant(-1.0, (0.0, 0.0), 2).sqrt()


def test_geometric_series():
    one = Jet2.constant(1.0, (0.0, 0.0), 2)
    quotient = jet_div(one, 1 + Jet2.variable("u", (0.0, 0.0), 2))
    assert_coefficients(quotient, {(0, 0): 1.0, (1, 0): -1.0, (2, 0): 1.0})


def test_division_near_zero():
    one = Jet2.constant(1.0, (0.0, 0.0), 2)
    with pytest.raises(DivisionNearZero):
        jet_div(one, Jet2.variable("u", (0.0, 0.0), 2))
    with pytest.raises(DivisionNearZero):
        one / 0
    with pytest.raises(ZeroDivisionError):
        1.0 / Jet2.variable("v", (0.0, 0.0), 2)


def test_divide_by_v():
    square = jet_lift([(0, 2, 1.0)], (0.0, 0.0), 3)
    quotient = jet_divide_by_v(square)
    assert quotient.order == 2
    assert_coefficients(quotient, {(0, 1): 1.0})


def test_divide_by_v_normal_form_component():
    # shaped like f_v of the second normal form component, v plus higher terms
    a = jet_lift([(0, 1, 1.0), (4, 3, 0.7), (1, 2, 2.0)], (0.3, 0.0), 4)
    quotient = jet_divide_by_v(a)
    assert quotient.value == pytest.approx(1.0)
    assert quotient.coefficient(1, 1) == pytest.approx(2.0)


def test_divide_by_v_rejects():
    with pytest.raises(NotDivisibleByV):
        jet_divide_by_v(Jet2.variable("u", (0.0, 0.0), 3))
    with pytest.raises(ValueError):
        jet_divide_by_v(Jet2.variable("v", (0.0, 1.0), 3))


def test_vector_products():
    base = (0.0, 0.0)
    e1 = [Jet2.constant(c, base, 2) for c in (1.0, 0.0, 0.0)]
    e2 = [Jet2.constant(c, base, 2) for c in (0.0, 1.0, 0.0)]
    e3 = jet_cross(e1, e2)
    assert [component.value for component in e3] == [0.0, 0.0, 1.0]
    assert jet_dot(e1, e2).value == 0.0


polynomials = st.lists(
    st.tuples(
        st.integers(0, 2),
        st.integers(0, 2),
        st.floats(-1, 1, allow_nan=False, allow_infinity=False),
    ),
    max_size=6,
)
bases = st.tuples(st.floats(-0.5, 0.5), st.floats(-0.5, 0.5))


@settings(max_examples=50, deadline=None)
@given(polynomials, polynomials, bases)
def test_product_matches_lift(left, right, base):
    product = [(i1 + i2, j1 + j2, c1 * c2) for i1, j1, c1 in left for i2, j2, c2 in right]
    expected = jet_lift(product, base, 4)
    actual = jet_mul(jet_lift(left, base, 4), jet_lift(right, base, 4))
    assert torch.allclose(actual.coeffs, expected.coeffs, atol=1e-9)


@settings(max_examples=50, deadline=None)
@given(polynomials, bases, st.floats(1, 3))
def test_sqrt_squares_back(polynomial, base, shift):
    a = jet_lift(polynomial, base, 4)
    # keep the constant term away from zero
    a = a - a.value + shift
    root = jet_sqrt(a)
    assert torch.allclose((root * root).coeffs, a.coeffs, atol=1e-7)
    assert math.isclose(root.value, math.sqrt(shift))


@settings(max_examples=50, deadline=None)
@given(polynomials, polynomials, bases)
def test_division_inverts_product(numerator, denominator, base):
    a = jet_lift(numerator, base, 3)
    b = jet_lift(denominator, base, 3)
    b = b - b.value + 1.5
    assert torch.allclose(jet_div(a * b, b).coeffs, a.coeffs, atol=1e-7)
