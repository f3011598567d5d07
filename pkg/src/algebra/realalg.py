"""
Real algebraic numbers as exact rationals or (square-free polynomial, isolating interval),
and the exact sign, order and image predicates built on them.
"""

import enum
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

from src.algebra.polynomial import SturmSequence, UniPoly, gcd, resultant, squarefree_decomposition, squarefree_part
from src.utils.errors import InvariantViolation, ZeroPolynomialError

logger = logging.getLogger(__name__)


class Sign(enum.IntEnum):
    NEG = -1
    ZERO = 0
    POS = 1

    @classmethod
    def of(cls, value):
        return cls((value > 0) - (value < 0))

    @property
    def symbol(self):
        return {Sign.NEG: "-", Sign.ZERO: "0", Sign.POS: "+"}[self]


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1

    @classmethod
    def of(cls, value):
        return cls((value > 0) - (value < 0))


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


class AlgReal:
    """A real algebraic number; use compare() for order, == is structural"""

    __slots__ = ()


@dataclass(frozen=True)
class Exact(AlgReal):
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True)
class Isolated(AlgReal):
    """Unique root of a square-free polynomial in (lo, hi), with defining(lo)*defining(hi) < 0"""

    defining: UniPoly
    lo: Fraction
    hi: Fraction

    @property
    def width(self):
        return self.hi - self.lo

    def refine(self):
        """Halve the interval; returns Exact if the midpoint hits the root"""
        mid = (self.lo + self.hi) / 2
        at_mid = self.defining(mid)
        if at_mid == 0:
            return Exact(mid)
        if (at_mid > 0) == (self.defining(self.lo) > 0):
            return Isolated(self.defining, mid, self.hi)
        return Isolated(self.defining, self.lo, mid)


def recognize_rational(poly, lo, hi):
    """Exact if the single root of poly in (lo, hi) is rational, else Isolated"""
    poly = poly.primitive()
    if poly.degree == 1:
        return Exact(-poly.coeffs[0] / poly.coeffs[1])
    lead = int(poly.lead)
    lo_positive = poly(lo) > 0
    # two rationals with denominators <= lead are at least 1/lead^2 apart
    while hi - lo >= Fraction(1, 2 * lead * lead):
        mid = (lo + hi) / 2
        at_mid = poly(mid)
        if at_mid == 0:
            return Exact(mid)
        if (at_mid > 0) == lo_positive:
            lo = mid
        else:
            hi = mid
    candidate = ((lo + hi) / 2).limit_denominator(lead)
    if lo < candidate < hi and poly(candidate) == 0:
        return Exact(candidate)
    return Isolated(poly, lo, hi)


def _make_root(poly, sturm, lo, hi):
    while poly(lo) == 0 or poly(hi) == 0:
        mid = (lo + hi) / 2
        if poly(mid) == 0:
            return Exact(mid)
        if sturm.count(lo, mid) == 1:
            hi = mid
        else:
            lo = mid
    return recognize_rational(poly, lo, hi)


def _isolate_squarefree(poly):
    sturm = SturmSequence(poly)
    bound = poly.cauchy_bound()
    roots = []
    pending = [(-bound, bound)]
    while pending:
        lo, hi = pending.pop()
        count = sturm.count(lo, hi)
        if count == 0:
            continue
        if count == 1:
            roots.append(_make_root(poly, sturm, lo, hi))
            continue
        mid = (lo + hi) / 2
        if poly(mid) == 0:
            roots.append(Exact(mid))
        pending.extend([(lo, mid), (mid, hi)])
    return roots


def isolate_real_roots(poly):
    """Strictly increasing [(root, multiplicity)] over the real roots of poly"""
    if poly.is_zero:
        raise ZeroPolynomialError("cannot isolate the roots of the zero polynomial")
    found = []
    for factor, multiplicity in squarefree_decomposition(poly):
        found.extend((root, multiplicity) for root in _isolate_squarefree(factor))
    found.sort(key=cmp_to_key(lambda a, b: compare(a[0], b[0])))
    logger.debug(f"isolated {len(found)} real roots of {poly}")
    return found


def _compare_rational(value, z):
    if value <= z.lo:
        return Ordering.LESS
    if value >= z.hi:
        return Ordering.GREATER
    at_value = z.defining(value)
    if at_value == 0:
        return Ordering.EQUAL
    if (at_value > 0) == (z.defining(z.lo) > 0):
        return Ordering.LESS
    return Ordering.GREATER


def compare(a, b):
    """Exact trichotomy of two algebraic reals"""
    if isinstance(a, Exact) and isinstance(b, Exact):
        return Ordering.of(a.value - b.value)
    if isinstance(a, Exact):
        return _compare_rational(a.value, b)
    if isinstance(b, Exact):
        return Ordering(-_compare_rational(b.value, a))
    if a.hi > b.lo and b.hi > a.lo:
        common = gcd(a.defining, b.defining)
        if common.degree > 0 and SturmSequence(common).count(max(a.lo, b.lo), min(a.hi, b.hi)) > 0:
            return Ordering.EQUAL
    while True:
        if a.hi <= b.lo:
            return Ordering.LESS
        if b.hi <= a.lo:
            return Ordering.GREATER
        a, b = a.refine(), b.refine()
        if isinstance(a, Exact) or isinstance(b, Exact):
            return compare(a, b)


def sort_key():
    return cmp_to_key(compare)


def sorted_distinct(values):
    """Sort algebraic reals and drop duplicates under compare"""
    result = []
    for value in sorted(values, key=sort_key()):
        if not result or compare(result[-1], value) != Ordering.EQUAL:
            result.append(value)
    return result


def sign_at(poly, z):
    """Exact sign of poly(z)"""
    if poly.is_zero:
        return Sign.ZERO
    if isinstance(z, Exact):
        return Sign.of(poly(z.value))
    if poly.degree == 0:
        return Sign.of(poly.lead)
    reduced = squarefree_part(poly)
    common = gcd(reduced, z.defining)
    if common.degree > 0 and SturmSequence(common).count(z.lo, z.hi) > 0:
        return Sign.ZERO
    sturm = SturmSequence(reduced)
    while sturm.count(z.lo, z.hi) > 0 or reduced(z.lo) == 0 or reduced(z.hi) == 0:
        z = z.refine()
        if isinstance(z, Exact):
            return Sign.of(poly(z.value))
    return Sign.of(poly(z.lo))


def side_sign(poly, z, side):
    """Sign of poly on a punctured one-sided neighbourhood of z; never ZERO"""
    if poly.is_zero:
        raise ZeroPolynomialError("one-sided sign of the zero polynomial")
    if poly.degree == 0:
        return Sign.of(poly.lead)
    reduced = squarefree_part(poly)
    sturm = SturmSequence(reduced)
    if isinstance(z, Exact):
        delta = Fraction(1)
        while True:
            probe = z.value + delta if side is Side.RIGHT else z.value - delta
            lo, hi = min(z.value, probe), max(z.value, probe)
            if sturm.count(lo, hi) == 0 and reduced(probe) != 0:
                return Sign.of(poly(probe))
            delta /= 2
    on_root = 1 if sign_at(poly, z) == Sign.ZERO else 0
    while sturm.count(z.lo, z.hi) != on_root or reduced(z.lo) == 0 or reduced(z.hi) == 0:
        z = z.refine()
        if isinstance(z, Exact):
            return side_sign(poly, z, side)
    return Sign.of(poly(z.hi if side is Side.RIGHT else z.lo))


def image_value(r, z):
    """The algebraic real r(z)"""
    if isinstance(z, Exact):
        return Exact(r(z.value))
    if r.degree <= 0:
        return Exact(r(0))
    # Res_x(defining(x), y - r(x)) vanishes at every r(root of defining)
    f = [UniPoly.constant(c) for c in z.defining.coeffs]
    g = [UniPoly([-r.coeffs[0], 1])] + [UniPoly.constant(-c) for c in r.coeffs[1:]]
    target = squarefree_part(resultant(f, g)).primitive()
    sturm = SturmSequence(target)
    while True:
        y_lo, y_hi = r.interval_eval(z.lo, z.hi)
        lo_hit, hi_hit = target(y_lo) == 0, target(y_hi) == 0
        inside = sturm.count(y_lo, y_hi) + lo_hit + hi_hit
        if inside == 0:
            raise InvariantViolation(f"interval image of {r} lost the value")
        if inside == 1:
            if lo_hit:
                return Exact(y_lo)
            if hi_hit:
                return Exact(y_hi)
            return recognize_rational(target, y_lo, y_hi)
        z = z.refine()
        if isinstance(z, Exact):
            return Exact(r(z.value))


def rational_value(z):
    """Fraction when z is rational, else None"""
    if isinstance(z, Exact):
        return z.value
    recognized = recognize_rational(z.defining, z.lo, z.hi)
    return recognized.value if isinstance(recognized, Exact) else None


def to_float(z, digits):
    """Decimal string within 10^-digits of z"""
    if digits < 1:
        raise ValueError("digits must be at least 1")
    scale = 10**digits
    if isinstance(z, Isolated):
        while z.width >= Fraction(1, 2 * scale):
            z = z.refine()
            if isinstance(z, Exact):
                break
    value = z.value if isinstance(z, Exact) else (z.lo + z.hi) / 2
    scaled = round(value * scale)
    whole, fraction = divmod(abs(scaled), scale)
    sign = "-" if scaled < 0 else ""
    return f"{sign}{whole}.{fraction:0{digits}d}"


def approx(z):
    return float(to_float(z, 15))
