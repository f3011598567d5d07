"""
Tests for exact real algebraic numbers: isolation, order, signs and images.
"""

import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from src.algebra.polynomial import UniPoly
from src.algebra.realalg import (
    Exact,
    Isolated,
    Ordering,
    Side,
    Sign,
    approx,
    compare,
    image_value,
    isolate_real_roots,
    rational_value,
    side_sign,
    sign_at,
    sorted_distinct,
    to_float,
)
from src.utils.errors import ZeroPolynomialError
from src.utils.strategies import planted_polynomials, small_rationals

SQRT2 = isolate_real_roots(UniPoly([-2, 0, 1]))[1][0]
CUBE_ROOT_3 = isolate_real_roots(UniPoly([-3, 0, 0, 1]))[0][0]


def test_rational_roots_come_back_exact():
    roots = isolate_real_roots(UniPoly.from_roots([Fraction(1, 3), -2, -2, 5]))
    assert [(rational_value(z), m) for z, m in roots] == [(-2, 2), (Fraction(1, 3), 1), (5, 1)]
    assert all(isinstance(z, Exact) for z, _ in roots)


def test_irrational_roots_are_isolated():
    roots = isolate_real_roots(UniPoly([-2, 0, 1]))
    assert len(roots) == 2
    assert all(isinstance(z, Isolated) for z, _ in roots)
    assert to_float(roots[1][0], 10) == "1.4142135624"
    assert to_float(roots[0][0], 4) == "-1.4142"


def test_zero_polynomial_has_no_isolation():
    with pytest.raises(ZeroPolynomialError):
        isolate_real_roots(UniPoly())


def test_no_real_roots():
    assert isolate_real_roots(UniPoly([1, 0, 1])) == []
    assert isolate_real_roots(UniPoly([7])) == []


@given(planted_polynomials(max_roots=5, max_multiplicity=2))
@settings(max_examples=80, deadline=None)
def test_isolation_recovers_planted_roots(planted):
    poly, roots = planted
    found = isolate_real_roots(poly)
    assert [rational_value(z) for z, _ in found] == sorted(roots)
    assert [m for _, m in found] == [roots[r] for r in sorted(roots)]


@given(st.lists(st.integers(-9, 9), min_size=1, max_size=8, unique=True))
@settings(max_examples=40, deadline=None)
def test_isolation_up_to_degree_eight(roots):
    poly = UniPoly.from_roots([Fraction(r, 2) for r in roots])
    found = isolate_real_roots(poly)
    assert [rational_value(z) for z, _ in found] == sorted(Fraction(r, 2) for r in roots)


def test_sturm_isolation_agrees_with_sympy_count():
    poly = UniPoly([1, -3, 0, 1])
    expected = sympy.Poly(list(reversed([int(c) for c in poly.coeffs])), sympy.Symbol("x")).count_roots()
    assert len(isolate_real_roots(poly)) == expected


def test_compare_mixed_representations():
    assert compare(SQRT2, Exact(Fraction(7, 5))) == Ordering.GREATER
    assert compare(Exact(Fraction(3, 2)), SQRT2) == Ordering.GREATER
    assert compare(SQRT2, CUBE_ROOT_3) == Ordering.LESS
    other_sqrt2 = isolate_real_roots(UniPoly([-4, 0, 2]).primitive() * UniPoly([1, 1]))
    assert compare(SQRT2, other_sqrt2[-1][0]) == Ordering.EQUAL


def test_sorted_distinct_drops_equal_values():
    values = [CUBE_ROOT_3, Exact(1), SQRT2, Exact(1), isolate_real_roots(UniPoly([-2, 0, 1]))[1][0]]
    result = sorted_distinct(values)
    assert len(result) == 3
    assert compare(result[0], Exact(1)) == Ordering.EQUAL


@given(st.lists(st.integers(-4, 4), min_size=3, max_size=6))
@settings(max_examples=40, deadline=None)
def test_order_axioms(shifts):
    # a mixture of rationals and shifted square roots of two
    values = []
    for i, shift in enumerate(shifts):
        if i % 2:
            values.append(Exact(Fraction(shift, 3)))
        else:
            values.append(isolate_real_roots(UniPoly([shift * shift - 2, -2 * shift, 1]))[1][0])
    for a, b in itertools.product(values, repeat=2):
        assert compare(a, b) == Ordering(-compare(b, a))
    for a, b, c in itertools.product(values, repeat=3):
        if compare(a, b) != Ordering.GREATER and compare(b, c) != Ordering.GREATER:
            assert compare(a, c) != Ordering.GREATER


def test_sign_at_irrational_and_rational_points():
    assert sign_at(UniPoly([-2, 0, 1]), SQRT2) == Sign.ZERO
    assert sign_at(UniPoly([-3, 0, 1]), SQRT2) == Sign.NEG
    assert sign_at(UniPoly([0, 1]), Exact(0)) == Sign.ZERO
    assert sign_at(UniPoly(), SQRT2) == Sign.ZERO


def test_side_sign_never_zero():
    s = UniPoly([0, 0, 0, 1])
    assert side_sign(s, Exact(0), Side.LEFT) == Sign.NEG
    assert side_sign(s, Exact(0), Side.RIGHT) == Sign.POS
    square = UniPoly([-2, 0, 1]) ** 2
    assert side_sign(square, SQRT2, Side.LEFT) == Sign.POS
    assert side_sign(square, SQRT2, Side.RIGHT) == Sign.POS
    assert side_sign(UniPoly([-2, 0, 1]), SQRT2, Side.LEFT) == Sign.NEG


def test_image_value_on_rationals():
    r = UniPoly([0, -5, 7])
    assert image_value(r, Exact(2)) == Exact(18)
    assert image_value(r, Exact(-1)) == Exact(12)


def test_image_value_recognizes_rational_images():
    # (sqrt 2)^2 = 2 and (sqrt 2)^3 - 2*sqrt 2 = 0
    assert image_value(UniPoly([0, 0, 1]), SQRT2) == Exact(2)
    assert image_value(UniPoly([0, -2, 0, 1]), SQRT2) == Exact(0)


def test_image_value_of_irrational_image():
    value = image_value(UniPoly([1, 1]), SQRT2)
    assert compare(value, Exact(Fraction(12, 5))) == Ordering.GREATER
    assert compare(value, Exact(Fraction(5, 2))) == Ordering.LESS
    assert abs(approx(value) - 2.414213562373095) < 1e-12


def test_to_float_rounds_to_digits():
    assert to_float(Exact(Fraction(1, 3)), 3) == "0.333"
    assert to_float(Exact(Fraction(-2, 3)), 2) == "-0.67"
    assert to_float(Exact(18), 2) == "18.00"
    with pytest.raises(ValueError):
        to_float(Exact(1), 0)


@given(planted_polynomials(), small_rationals)
@settings(max_examples=80, deadline=None)
def test_side_sign_matches_nearby_values(planted, offset):
    poly, roots = planted
    for z in [*roots, offset]:
        epsilon = min((abs(other - z) for other in roots if other != z), default=Fraction(1)) / 2
        assert side_sign(poly, Exact(z), Side.RIGHT) == Sign.of(poly(z + epsilon))
        assert side_sign(poly, Exact(z), Side.LEFT) == Sign.of(poly(z - epsilon))
        if poly(z) != 0:
            assert side_sign(poly, Exact(z), Side.LEFT) == sign_at(poly, Exact(z))
            assert side_sign(poly, Exact(z), Side.RIGHT) == sign_at(poly, Exact(z))


def test_side_sign_beside_an_irrational_root():
    poly = UniPoly([-2, 0, 1]) * UniPoly([-1, 1])
    assert side_sign(poly, SQRT2, Side.RIGHT) == Sign.of(poly(Fraction("1.4143")))
    assert side_sign(poly, SQRT2, Side.LEFT) == Sign.of(poly(Fraction("1.4141")))
    cube = UniPoly([-3, 0, 0, 1])
    assert side_sign(cube * cube, CUBE_ROOT_3, Side.LEFT) == Sign.POS
    assert side_sign(poly, CUBE_ROOT_3, Side.LEFT) == sign_at(poly, CUBE_ROOT_3)
    assert side_sign(poly, CUBE_ROOT_3, Side.RIGHT) == sign_at(poly, CUBE_ROOT_3)
