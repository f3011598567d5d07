"""
Dense univariate polynomials over the rationals.

Ring operations, Euclidean gcd, Yun square-free decomposition, Sturm
sequences and Sylvester resultants (Bareiss elimination over Q[y]).
"""

import math
from fractions import Fraction
from functools import reduce

from src.utils.errors import DivisionByZeroPolyError, InvariantViolation, ZeroPolynomialError


class UniPoly:
    """Polynomial with Fraction coefficients, ascending degree, no trailing zeros"""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        normalized = [Fraction(c) for c in coeffs]
        while normalized and normalized[-1] == 0:
            normalized.pop()
        self.coeffs = tuple(normalized)

    @classmethod
    def constant(cls, value):
        return cls([value])

    @classmethod
    def x(cls):
        return cls([0, 1])

    @classmethod
    def monomial(cls, coeff, degree):
        return cls([0] * degree + [coeff])

    @classmethod
    def from_roots(cls, roots, lead=1):
        """Monic product of (x - root) over roots, scaled by lead"""
        result = cls.constant(lead)
        for root in roots:
            result = result * cls([-Fraction(root), 1])
        return result

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    @property
    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UniPoly.constant(other)
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        return self.format("x")

    def format(self, var="x"):
        if self.is_zero:
            return "0"
        parts = []
        for degree in range(self.degree, -1, -1):
            coeff = self.coeffs[degree]
            if coeff == 0:
                continue
            magnitude = abs(coeff)
            if degree == 0:
                body = str(magnitude)
            else:
                power = var if degree == 1 else f"{var}^{degree}"
                body = power if magnitude == 1 else f"{magnitude}*{power}"
            if not parts:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(parts)

    @staticmethod
    def _coerce(other):
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        size = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (size - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (size - len(other.coeffs))
        return UniPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return UniPoly()
        product = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                product[i + j] += a * b
        return UniPoly(product)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if exponent < 0:
            raise ValueError("negative exponent")
        result = UniPoly.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __call__(self, value):
        """Exact Horner evaluation at a rational"""
        acc = Fraction(0)
        for coeff in reversed(self.coeffs):
            acc = acc * value + coeff
        return acc

    def float_coeffs(self):
        """Descending float coefficients, the order numpy.polyval expects"""
        return [float(c) for c in reversed(self.coeffs)] or [0.0]

    def derivative(self):
        return UniPoly(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def divrem(self, divisor):
        if divisor.is_zero:
            raise DivisionByZeroPolyError("division by the zero polynomial")
        remainder = list(self.coeffs)
        quotient = [Fraction(0)] * max(len(remainder) - divisor.degree, 0)
        lead = divisor.lead
        for shift in range(len(remainder) - len(divisor.coeffs), -1, -1):
            factor = remainder[shift + divisor.degree] / lead
            quotient[shift] = factor
            if factor == 0:
                continue
            for i, coeff in enumerate(divisor.coeffs):
                remainder[shift + i] -= factor * coeff
        return UniPoly(quotient), UniPoly(remainder[: max(divisor.degree, 0)])

    def exact_div(self, divisor):
        quotient, remainder = self.divrem(divisor)
        if not remainder.is_zero:
            raise InvariantViolation(f"{divisor} does not divide {self}")
        return quotient

    def monic(self):
        if self.is_zero:
            return self
        return UniPoly(c / self.lead for c in self.coeffs)

    def primitive(self):
        """Integer coefficients with unit content and positive leading coefficient"""
        if self.is_zero:
            return self
        denominator = reduce(math.lcm, (c.denominator for c in self.coeffs), 1)
        ints = [int(c * denominator) for c in self.coeffs]
        content = reduce(math.gcd, ints, 0)
        if ints[-1] < 0:
            content = -content
        return UniPoly(Fraction(i, content) for i in ints)

    def compose(self, inner):
        """self(inner(x))"""
        result = UniPoly()
        for coeff in reversed(self.coeffs):
            result = result * inner + coeff
        return result

    def reflect(self):
        """p(-x)"""
        return UniPoly(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs))

    def shift(self, offset):
        """p(x - offset)"""
        return self.compose(UniPoly([-Fraction(offset), 1]))

    def sign_at_infinity(self, positive=True):
        if self.is_zero:
            return 0
        sign = 1 if self.lead > 0 else -1
        if not positive and self.degree % 2 == 1:
            sign = -sign
        return sign

    def interval_eval(self, lo, hi):
        """Enclosure of p over [lo, hi] by interval Horner"""
        if self.is_zero:
            return Fraction(0), Fraction(0)
        acc_lo = acc_hi = self.lead
        for coeff in reversed(self.coeffs[:-1]):
            products = (acc_lo * lo, acc_lo * hi, acc_hi * lo, acc_hi * hi)
            acc_lo = min(products) + coeff
            acc_hi = max(products) + coeff
        return acc_lo, acc_hi

    def cauchy_bound(self):
        """Every real root lies strictly inside (-bound, bound)"""
        lead = abs(self.lead)
        return 1 + max((abs(c) / lead for c in self.coeffs[:-1]), default=Fraction(0))


def gcd(a, b):
    """Monic greatest common divisor; gcd(0, 0) is 0"""
    while not b.is_zero:
        a, b = b, a.divrem(b)[1]
    return a.monic()


def squarefree_part(poly):
    if poly.is_zero:
        raise ZeroPolynomialError("square-free part of the zero polynomial")
    if poly.degree <= 0:
        return UniPoly.constant(1)
    return poly.exact_div(gcd(poly, poly.derivative())).monic()


def squarefree_decomposition(poly):
    """Yun's algorithm: [(factor, multiplicity)], factors monic, square-free, coprime"""
    if poly.is_zero:
        raise ZeroPolynomialError("square-free decomposition of the zero polynomial")
    if poly.degree == 0:
        return []
    f = poly.monic()
    df = f.derivative()
    a = gcd(f, df)
    b = f.exact_div(a)
    d = df.exact_div(a) - b.derivative()
    factors = []
    multiplicity = 1
    while b.degree > 0:
        a = gcd(b, d)
        b = b.exact_div(a)
        d = d.exact_div(a) - b.derivative()
        if a.degree > 0:
            factors.append((a, multiplicity))
        multiplicity += 1
    return factors


class SturmSequence:
    """Sturm chain of a square-free polynomial; bounds may be +-math.inf"""

    def __init__(self, poly):
        if poly.is_zero:
            raise ZeroPolynomialError("Sturm sequence of the zero polynomial")
        self.poly = poly
        chain = [poly, poly.derivative()]
        while not chain[-1].is_zero:
            chain.append(-chain[-2].divrem(chain[-1])[1])
        chain.pop()
        self.chain = chain

    def variations(self, point):
        if point == math.inf:
            signs = [p.sign_at_infinity(True) for p in self.chain]
        elif point == -math.inf:
            signs = [p.sign_at_infinity(False) for p in self.chain]
        else:
            signs = [p(point) for p in self.chain]
        signs = [s for s in signs if s != 0]
        return sum(1 for left, right in zip(signs, signs[1:]) if (left > 0) != (right > 0))

    def count(self, lo=-math.inf, hi=math.inf):
        """Number of distinct roots in the open interval (lo, hi)"""
        if not lo < hi:
            return 0
        roots = self.variations(lo) - self.variations(hi)
        if hi != math.inf and self.poly(hi) == 0:
            roots -= 1
        return roots


def resultant(f, g):
    """Sylvester resultant of f, g given as ascending coefficient lists of UniPoly (in y)"""
    f = _trim(f)
    g = _trim(g)
    if not f or not g:
        return UniPoly()
    m, n = len(f) - 1, len(g) - 1
    if m == 0:
        return f[0] ** n
    if n == 0:
        return g[0] ** m
    size = m + n
    zero = UniPoly()
    matrix = []
    for row in range(n):
        matrix.append([zero] * row + list(reversed(f)) + [zero] * (size - row - m - 1))
    for row in range(m):
        matrix.append([zero] * row + list(reversed(g)) + [zero] * (size - row - n - 1))
    return _bareiss_determinant(matrix)


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1].is_zero:
        coeffs.pop()
    return coeffs


def _bareiss_determinant(matrix):
    size = len(matrix)
    sign = 1
    previous = UniPoly.constant(1)
    for k in range(size - 1):
        if matrix[k][k].is_zero:
            pivot = next((i for i in range(k + 1, size) if not matrix[i][k].is_zero), None)
            if pivot is None:
                return UniPoly()
            matrix[k], matrix[pivot] = matrix[pivot], matrix[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                matrix[i][j] = (matrix[i][j] * matrix[k][k] - matrix[i][k] * matrix[k][j]).exact_div(previous)
        previous = matrix[k][k]
    determinant = matrix[size - 1][size - 1]
    return determinant if sign > 0 else -determinant
