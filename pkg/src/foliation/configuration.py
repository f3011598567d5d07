"""
Separatrix configuration of the foliation by level sets of p(x, y) = r(x) + s(x)*y.

The roots of s cut the plane into vertical strips.  In each strip every level c
has exactly one leaf, the graph of N_c(x) = (c - r(x)) / s(x), so a strip is
described by the asymptotic signs of N_c at its finite ends (its token) and
by the level intervals between its inner separatrices (its canonical regions).
"""

import enum
import logging
from dataclasses import dataclass
from fractions import Fraction

from src.algebra.realalg import (
    Exact,
    Ordering,
    Side,
    Sign,
    compare,
    image_value,
    isolate_real_roots,
    rational_value,
    side_sign,
    sign_at,
    sorted_distinct,
    to_float,
)
from src.utils.errors import (
    CriticalValueOnFiberError,
    InvariantViolation,
    OutOfScopeError,
    SimpleZeroError,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LeftInfinite:
    """Strip (-inf, b): sign of N_{c_b} as x -> b-"""

    sigma_b: Sign

    kind = "L"

    @property
    def signs(self):
        return (self.sigma_b,)

    @property
    def case(self):
        return "I"

    def negated(self):
        return LeftInfinite(Sign(-self.sigma_b))

    def mirrored(self):
        return RightInfinite(self.sigma_b)


@dataclass(frozen=True)
class RightInfinite:
    """Strip (a, +inf): sign of N_{c_a} as x -> a+"""

    sigma_a: Sign

    kind = "R"

    @property
    def signs(self):
        return (self.sigma_a,)

    @property
    def case(self):
        return "I"

    def negated(self):
        return RightInfinite(Sign(-self.sigma_a))

    def mirrored(self):
        return LeftInfinite(self.sigma_a)


@dataclass(frozen=True)
class BoundedDistinct:
    """Strip (a, b) with c_a != c_b; sigma_xy is the sign of N_{c_x} at y (a+ or b-)"""

    sigma_aa: Sign
    sigma_ab: Sign
    sigma_ba: Sign
    sigma_bb: Sign

    kind = "BD"

    @property
    def signs(self):
        return (self.sigma_aa, self.sigma_ab, self.sigma_ba, self.sigma_bb)

    @property
    def case(self):
        letters = {(1, 1): "a", (1, -1): "b", (-1, 1): "c", (-1, -1): "d"}
        base = int(self.sigma_aa)
        return f"II({letters[(base * self.sigma_ba, base * self.sigma_bb)]})"

    def negated(self):
        return BoundedDistinct(*(Sign(-s) for s in self.signs))

    def mirrored(self):
        return BoundedDistinct(self.sigma_bb, self.sigma_ba, self.sigma_ab, self.sigma_aa)


@dataclass(frozen=True)
class BoundedEqual:
    """Strip (a, b) with c_a == c_b: signs of the single curve N_c at a+ and b-"""

    sigma_a: Sign
    sigma_b: Sign

    kind = "BE"

    @property
    def signs(self):
        return (self.sigma_a, self.sigma_b)

    @property
    def case(self):
        # equal signs: the curve and both verticals form a cyclic triple
        return "III(a)" if self.sigma_a == self.sigma_b else "III(b)"

    def negated(self):
        return BoundedEqual(Sign(-self.sigma_a), Sign(-self.sigma_b))

    def mirrored(self):
        return BoundedEqual(self.sigma_b, self.sigma_a)


class Attachment(enum.Enum):
    LEFT = "L"
    RIGHT = "R"
    BOTH = "B"

    def swapped(self):
        return {Attachment.LEFT: Attachment.RIGHT, Attachment.RIGHT: Attachment.LEFT}.get(self, self)


@dataclass(frozen=True)
class Vertical:
    root: int

    @property
    def label(self):
        return f"V{self.root}"


@dataclass(frozen=True)
class Inner:
    strip: int
    attach: Attachment

    @property
    def label(self):
        return f"I{self.strip}:{self.attach.value}"


def separatrix_sort_key(sep_id):
    if isinstance(sep_id, Vertical):
        return (0, sep_id.root, "")
    return (1, sep_id.strip, sep_id.attach.value)


@dataclass(frozen=True)
class Strip:
    """left/right are root indices, None for -inf/+inf"""

    index: int
    left: int = None
    right: int = None


@dataclass(frozen=True)
class CanonicalRegion:
    """Leaves of one strip with levels in (lower, upper); None bounds are infinite"""

    strip: int
    lower: object
    upper: object
    boundary: frozenset

    @property
    def label(self):
        return f"R{self.strip}:" + ",".join(s.label for s in sorted(self.boundary, key=separatrix_sort_key))


@dataclass(frozen=True)
class Configuration:
    map: object
    roots: tuple
    multiplicities: tuple
    boundary_values: tuple
    rprime_signs: tuple
    strips: tuple
    tokens: tuple
    regions: tuple
    bifurcation: tuple

    @property
    def k(self):
        return len(self.roots)

    @property
    def is_trivial(self):
        return not self.roots

    def level_of(self, sep_id):
        if isinstance(sep_id, Vertical):
            return self.boundary_values[sep_id.root]
        strip = self.strips[sep_id.strip]
        root = strip.right if sep_id.attach is Attachment.RIGHT else strip.left
        return self.boundary_values[root]

    def regions_in(self, strip_index):
        return [region for region in self.regions if region.strip == strip_index]


def validate_submersion(linear_map):
    """Isolated roots of s with multiplicities; raises unless p is a finite linear-like submersion"""
    if linear_map.s.is_zero:
        raise OutOfScopeError("s is identically zero, so its zero set is the whole line")
    roots = isolate_real_roots(linear_map.s)
    rprime = linear_map.r.derivative()
    for root, multiplicity in roots:
        if multiplicity == 1:
            raise SimpleZeroError(f"s has a simple zero near {to_float(root, 6)}", root)
        if sign_at(rprime, root) == Sign.ZERO:
            raise CriticalValueOnFiberError(f"r' vanishes at the zero {to_float(root, 6)} of s", root)
    return roots


def numerator_side_sign(linear_map, level, root, side, root_value=None):
    """Sign of c - r(x) as x -> root from one side, with level c an algebraic real"""
    if root_value is None:
        root_value = image_value(linear_map.r, root)
    difference = compare(level, root_value)
    if difference != Ordering.EQUAL:
        return Sign(difference)
    # c - r(x) ~ -r'(root)*(x - root)
    slope = sign_at(linear_map.r.derivative(), root)
    by_slope = Sign(-slope) if side is Side.RIGHT else slope
    exact_level = rational_value(level)
    if exact_level is not None:
        by_sign = side_sign(exact_level - linear_map.r, root, side)
        if by_sign != by_slope:
            raise InvariantViolation(
                f"one-sided sign of c - r at {to_float(root, 6)} is {by_sign.symbol} but r' gives {by_slope.symbol}"
            )
    return by_slope


def asymptotic_sign(linear_map, level, root, side, root_value=None):
    """Sign of the infinite limit of N_c as x -> root from one side"""
    numerator = numerator_side_sign(linear_map, level, root, side, root_value)
    return Sign(numerator * side_sign(linear_map.s, root, side))


def _strip_tokens(linear_map, roots, values):
    k = len(roots)

    def limit(level, root, side):
        return asymptotic_sign(linear_map, level, roots[root], side, values[root])

    tokens = [LeftInfinite(limit(values[0], 0, Side.LEFT))]
    for index in range(1, k):
        a, b = index - 1, index
        at_a = limit(values[a], a, Side.RIGHT)
        at_b = limit(values[b], b, Side.LEFT)
        if compare(values[a], values[b]) == Ordering.EQUAL:
            tokens.append(BoundedEqual(at_a, at_b))
            continue
        token = BoundedDistinct(
            at_a,
            limit(values[a], b, Side.LEFT),
            limit(values[b], a, Side.RIGHT),
            at_b,
        )
        if token.sigma_ab != -token.sigma_ba:
            raise InvariantViolation(f"strip {index} token {token} breaks sigma_ab = -sigma_ba")
        tokens.append(token)
    tokens.append(RightInfinite(limit(values[-1], k - 1, Side.RIGHT)))
    return tokens


def _strip_regions(strip, token, values, rprime_signs):
    levels = []
    if strip.left is not None:
        attach = Attachment.BOTH if isinstance(token, BoundedEqual) else Attachment.LEFT
        levels.append((values[strip.left], Inner(strip.index, attach)))
    if strip.right is not None and not isinstance(token, BoundedEqual):
        levels.append((values[strip.right], Inner(strip.index, Attachment.RIGHT)))
    if len(levels) == 2 and compare(levels[0][0], levels[1][0]) == Ordering.GREATER:
        levels.reverse()

    boundaries = [set() for _ in range(len(levels) + 1)]
    for position, (_, sep_id) in enumerate(levels):
        boundaries[position].add(sep_id)
        boundaries[position + 1].add(sep_id)

    def position_of(root):
        return next(i for i, (value, _) in enumerate(levels) if compare(value, values[root]) == Ordering.EQUAL)

    # leaves accumulating on a vertical come from the side sign(r') right of it, -sign(r') left of it
    if strip.left is not None:
        above = rprime_signs[strip.left] == Sign.POS
        boundaries[position_of(strip.left) + above].add(Vertical(strip.left))
    if strip.right is not None:
        above = rprime_signs[strip.right] == Sign.NEG
        boundaries[position_of(strip.right) + above].add(Vertical(strip.right))

    bounds = [None] + [value for value, _ in levels] + [None]
    regions = [
        CanonicalRegion(strip.index, bounds[i], bounds[i + 1], frozenset(boundary))
        for i, boundary in enumerate(boundaries)
    ]
    if len({region.boundary for region in regions}) != len(regions):
        raise InvariantViolation(f"strip {strip.index} has regions with equal boundaries")
    return regions


def _trivial_configuration(linear_map):
    return Configuration(
        map=linear_map,
        roots=(),
        multiplicities=(),
        boundary_values=(),
        rprime_signs=(),
        strips=(Strip(0),),
        tokens=(),
        regions=(CanonicalRegion(0, None, None, frozenset()),),
        bifurcation=(),
    )


def build_configuration(linear_map):
    """The complete combinatorial invariant of the foliation of p"""
    isolated = validate_submersion(linear_map)
    if not isolated:
        logger.info("📊 s has no real zeros: trivial foliation")
        return _trivial_configuration(linear_map)

    roots = [root for root, _ in isolated]
    k = len(roots)
    values = [image_value(linear_map.r, root) for root in roots]
    rprime = linear_map.r.derivative()
    rprime_signs = [sign_at(rprime, root) for root in roots]
    strips = [Strip(i, i - 1 if i > 0 else None, i if i < k else None) for i in range(k + 1)]
    tokens = _strip_tokens(linear_map, roots, values)

    regions = []
    for strip, token in zip(strips, tokens):
        regions.extend(_strip_regions(strip, token, values, rprime_signs))

    configuration = Configuration(
        map=linear_map,
        roots=tuple(roots),
        multiplicities=tuple(m for _, m in isolated),
        boundary_values=tuple(values),
        rprime_signs=tuple(rprime_signs),
        strips=tuple(strips),
        tokens=tuple(tokens),
        regions=tuple(regions),
        bifurcation=tuple(sorted_distinct(values)),
    )
    logger.info(f"📊 k={k}: {len(regions)} canonical regions, cases {[t.case for t in tokens]}")
    return configuration


def bifurcation_set(linear_map):
    """Sorted distinct r(Z_p)"""
    return list(build_configuration(linear_map).bifurcation)


def fiber_component_count(configuration, level):
    """Number of connected components of p^-1(level)"""
    if not isinstance(configuration, Configuration):
        configuration = build_configuration(configuration)
    if isinstance(level, (int, Fraction)):
        level = Exact(level)
    hits = sum(1 for value in configuration.boundary_values if compare(value, level) == Ordering.EQUAL)
    return configuration.k + 1 + hits


def separatrices(configuration):
    """[(separatrix id, level)] with verticals first, then inner curves by strip"""
    ids = {Vertical(j) for j in range(configuration.k)}
    for region in configuration.regions:
        ids.update(region.boundary)
    return [(sep_id, configuration.level_of(sep_id)) for sep_id in sorted(ids, key=separatrix_sort_key)]
