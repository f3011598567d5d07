"""
Hypothesis strategies shared by the test modules.
"""

from fractions import Fraction

from hypothesis import assume
from hypothesis import strategies as st

from src.algebra.expr import LinearLikeMap
from src.algebra.polynomial import UniPoly

small_rationals = st.builds(
    Fraction,
    st.integers(-6, 6),
    st.sampled_from([1, 1, 1, 2, 3]),
)

nonzero_rationals = small_rationals.filter(lambda q: q != 0)


@st.composite
def polynomials(draw, max_degree=5, min_degree=0):
    degree = draw(st.integers(min_degree, max_degree))
    coeffs = draw(st.lists(small_rationals, min_size=degree + 1, max_size=degree + 1))
    return UniPoly(coeffs)


@st.composite
def planted_polynomials(draw, max_roots=4, max_multiplicity=3):
    """(poly, {root: multiplicity}) with rational roots and a factor free of real roots"""
    roots = draw(st.lists(small_rationals, min_size=0, max_size=max_roots, unique=True))
    multiplicities = [draw(st.integers(1, max_multiplicity)) for _ in roots]
    poly = UniPoly.constant(draw(nonzero_rationals))
    for root, multiplicity in zip(roots, multiplicities):
        poly = poly * UniPoly([-root, 1]) ** multiplicity
    if draw(st.booleans()):
        poly = poly * UniPoly([draw(st.integers(1, 5)), 0, 1])
    return poly, dict(zip(roots, multiplicities))


@st.composite
def valid_maps(draw, max_roots=3, irrational_roots=True):
    """Finite linear-like submersions whose zeros of s all have multiplicity two or more

    With irrational_roots the zeros may include the pair +-sqrt(2) or +-sqrt(3).
    """
    roots = draw(st.lists(st.integers(-3, 3).map(Fraction), min_size=0, max_size=max_roots, unique=True))
    s = UniPoly.constant(draw(st.sampled_from([Fraction(-2), Fraction(-1), Fraction(1), Fraction(3, 2)])))
    for root in roots:
        s = s * UniPoly([-root, 1]) ** draw(st.integers(2, 3))
    quadratic = None
    if irrational_roots and draw(st.booleans()):
        quadratic = UniPoly([-draw(st.sampled_from([2, 3])), 0, 1])
        s = s * quadratic ** draw(st.integers(2, 3))
    if draw(st.booleans()):
        s = s * UniPoly([1, 0, 1])
    r = draw(polynomials(max_degree=4, min_degree=1))
    rprime = r.derivative()
    assume(all(rprime(root) != 0 for root in roots))
    assume(quadratic is None or not rprime.divrem(quadratic)[1].is_zero)
    return LinearLikeMap(r, s)
