"""
Chordal relations of leaf triples computed directly in the plane.

A leaf l2 separates l1 from l3 when a segment joining a point of l1 to a point
of l3 crosses l2 an odd number of times.  A triple with no separating member
is cyclic; its sign is the orientation of a triangle with one vertex on each
leaf whose edges meet the three leaves only at the vertices.  Every crossing
count is an exact Sturm count on a polynomial in the segment parameter.
"""

import enum
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
from tqdm import tqdm

from src.algebra.polynomial import SturmSequence, UniPoly, squarefree_decomposition, squarefree_part
from src.algebra.realalg import rational_value
from src.foliation.configuration import Attachment, Inner, Vertical, separatrices, separatrix_sort_key
from src.foliation.equivalence import map_boundary, map_separatrix, map_strip_index, token_match
from src.utils.errors import DegenerateChoiceError, OracleScopeError, PreconditionViolated

logger = logging.getLogger(__name__)

MAX_DEPTH = 24
# the witness search widens its dyadic depth in these steps
DEPTH_TIERS = (4, 10, MAX_DEPTH)
GRID_STEPS = 8
SCREEN_SAMPLES = 48
CACHE_SIZE = 4096
_SCREEN_GRID = np.linspace(0.0, 1.0, SCREEN_SAMPLES + 2)[1:-1]
_SCAN = np.logspace(-8, 8, 129, base=2.0)


@dataclass(frozen=True)
class VerticalLeaf:
    a: Fraction

    def points(self):
        return [(self.a, Fraction(0)), (self.a, Fraction(1)), (self.a, Fraction(-1))]


@dataclass(frozen=True)
class GraphLeaf:
    """Graph of x -> (level - r(x)) / s(x) over the open strip (lo, hi); None is infinite"""

    lo: Fraction
    hi: Fraction
    level: Fraction
    map: object

    def contains_x(self, x):
        return (self.lo is None or self.lo < x) and (self.hi is None or x < self.hi)

    def y_at(self, x):
        return (self.level - self.map.r(x)) / self.map.s(x)

    def point(self, x):
        return (x, self.y_at(x))

    def anchor_x(self):
        if self.lo is not None and self.hi is not None:
            return (self.lo + self.hi) / 2
        if self.lo is not None:
            return self.lo + 1
        if self.hi is not None:
            return self.hi - 1
        return Fraction(0)

    def points(self):
        anchor = self.anchor_x()
        shifts = [Fraction(0), Fraction(1, 3), Fraction(-1, 3), Fraction(1, 7)]
        width = (self.hi - self.lo) / 2 if self.lo is not None and self.hi is not None else Fraction(1)
        return [self.point(anchor + shift * width) for shift in shifts if self.contains_x(anchor + shift * width)]


class ChordalRelation(enum.Enum):
    SEPARATION_1 = "l2|l1|l3"
    SEPARATION_2 = "l1|l2|l3"
    SEPARATION_3 = "l1|l3|l2"
    CYCLIC_POSITIVE = "cyclic+"
    CYCLIC_NEGATIVE = "cyclic-"
    INCONCLUSIVE = "inconclusive"

    @classmethod
    def separation(cls, middle):
        return (cls.SEPARATION_1, cls.SEPARATION_2, cls.SEPARATION_3)[middle - 1]

    @property
    def is_separation(self):
        return self.name.startswith("SEPARATION")

    def reversed(self):
        swap = {
            ChordalRelation.CYCLIC_POSITIVE: ChordalRelation.CYCLIC_NEGATIVE,
            ChordalRelation.CYCLIC_NEGATIVE: ChordalRelation.CYCLIC_POSITIVE,
        }
        return swap.get(self, self)


@lru_cache(maxsize=CACHE_SIZE)
def _segment_polynomial(leaf, start, end):
    """g(t) = p(P(t)) - level along P(t) = start + t*(end - start)"""
    x_t = UniPoly([start[0], end[0] - start[0]])
    y_t = UniPoly([start[1], end[1] - start[1]])
    return leaf.map.r.compose(x_t) + leaf.map.s.compose(x_t) * y_t - leaf.level


def _parameter_range(leaf, start, end):
    """Open t-interval inside (0, 1) where the segment lies in the leaf's strip, or None"""
    dx = end[0] - start[0]
    if dx == 0:
        return (Fraction(0), Fraction(1)) if leaf.contains_x(start[0]) else None
    bounds = []
    for edge in (leaf.lo, leaf.hi):
        bounds.append(None if edge is None else (edge - start[0]) / dx)
    if dx < 0:
        bounds.reverse()
    lo = Fraction(0) if bounds[0] is None else max(Fraction(0), bounds[0])
    hi = Fraction(1) if bounds[1] is None else min(Fraction(1), bounds[1])
    return (lo, hi) if lo < hi else None


def crossing_parity(divider, start, end):
    """Parity of the number of times the segment crosses the divider leaf"""
    if isinstance(divider, VerticalLeaf):
        if start[0] == divider.a or end[0] == divider.a:
            raise DegenerateChoiceError("segment endpoint lies on the vertical leaf")
        return int((start[0] < divider.a) != (end[0] < divider.a))
    span = _parameter_range(divider, start, end)
    if span is None:
        return 0
    g = _segment_polynomial(divider, start, end)
    if g.is_zero:
        raise DegenerateChoiceError("segment runs along the leaf")
    for endpoint, t in ((start, 0), (end, 1)):
        if divider.contains_x(endpoint[0]) and g(t) == 0:
            raise DegenerateChoiceError("segment endpoint lies on the leaf")
    odd = sum(
        SturmSequence(factor).count(*span)
        for factor, multiplicity in squarefree_decomposition(g)
        if multiplicity % 2 == 1
    )
    return odd % 2


@lru_cache(maxsize=CACHE_SIZE)
def segment_meets(leaf, start, end):
    """True if the open segment (start, end) touches the leaf"""
    dx = end[0] - start[0]
    if isinstance(leaf, VerticalLeaf):
        if dx == 0:
            return start[0] == leaf.a
        t = (leaf.a - start[0]) / dx
        return 0 < t < 1
    span = _parameter_range(leaf, start, end)
    if span is None:
        return False
    g = _segment_polynomial(leaf, start, end)
    if g.is_zero:
        return True
    if g.degree == 0:
        return False
    return SturmSequence(squarefree_part(g)).count(*span) > 0


def _reference_point(divider):
    x = divider.anchor_x()
    return (x, divider.y_at(x) + 1)


@lru_cache(maxsize=CACHE_SIZE)
def side_of(leaf, divider):
    """Which component of the plane minus the divider contains the leaf"""
    if leaf == divider:
        raise PreconditionViolated("a leaf has no side with respect to itself")
    if isinstance(divider, VerticalLeaf):
        x = leaf.a if isinstance(leaf, VerticalLeaf) else leaf.anchor_x()
        return x > divider.a
    reference = _reference_point(divider)
    for point in leaf.points():
        try:
            return bool(crossing_parity(divider, reference, point))
        except DegenerateChoiceError:
            logger.debug(f"re-choosing a point of {leaf} off {divider}")
    raise DegenerateChoiceError(f"every sample point of {leaf} lies on {divider}")


def separates(l1, l2, l3):
    """True iff l2 separates l1 from l3"""
    if len({l1, l2, l3}) != 3:
        raise PreconditionViolated("separation needs three distinct leaves")
    return side_of(l1, l2) != side_of(l3, l2)


def _dyadic_xs(leaf, depth):
    """x-parameters one dyadic step toward each end of the strip"""
    near, far = Fraction(1, 2**depth), Fraction(2**depth)
    if leaf.lo is not None and leaf.hi is not None:
        half = (leaf.hi - leaf.lo) / 2
        return [leaf.lo + half * near, leaf.hi - half * near]
    if leaf.hi is not None:
        return [leaf.hi - near, leaf.hi - far]
    if leaf.lo is not None:
        return [leaf.lo + near, leaf.lo + far]
    return [-far, far]


def _grid_xs(leaf):
    if leaf.lo is not None and leaf.hi is not None:
        width = (leaf.hi - leaf.lo) / GRID_STEPS
        return [leaf.lo + width * k for k in range(1, GRID_STEPS)]
    steps = [Fraction(1, 2), Fraction(1), Fraction(2), Fraction(4)]
    if leaf.lo is not None:
        return [leaf.lo + step for step in steps]
    if leaf.hi is not None:
        return [leaf.hi - step for step in steps]
    return [sign * step for step in steps for sign in (1, -1)]


def _scan_xs(leaf):
    if leaf.lo is not None and leaf.hi is not None:
        return np.linspace(float(leaf.lo), float(leaf.hi), 2 * len(_SCAN) + 2)[1:-1]
    if leaf.lo is not None:
        return float(leaf.lo) + _SCAN
    if leaf.hi is not None:
        return float(leaf.hi) - _SCAN[::-1]
    return np.concatenate([-_SCAN[::-1], [0.0], _SCAN])


def _turning_xs(leaf):
    """Rationals near the local extrema of the leaf's graph, located on a float scan"""
    xs = _scan_xs(leaf)
    with np.errstate(all="ignore"):
        ys = (float(leaf.level) - np.polyval(leaf.map.r.float_coeffs(), xs)) / np.polyval(
            leaf.map.s.float_coeffs(), xs
        )
    steps = np.sign(np.diff(ys))
    turns = np.nonzero(steps[:-1] * steps[1:] < 0)[0] + 1
    candidates = (Fraction(float(xs[i])).limit_denominator(1024) for i in turns)
    return [x for x in candidates if leaf.contains_x(x)]


@lru_cache(maxsize=CACHE_SIZE)
def _graph_points(leaf, depth):
    """Candidate vertices on a graph leaf, plainest first"""
    xs = [leaf.anchor_x(), *_grid_xs(leaf), *_turning_xs(leaf)]
    for step in range(1, depth + 1):
        xs.extend(_dyadic_xs(leaf, step))
    return tuple(leaf.point(x) for x in dict.fromkeys(xs) if leaf.contains_x(x))


def _candidate_vertices(leaves, depth):
    """Per leaf, the candidate vertices; verticals also try the heights of the graph candidates"""
    graph_points = [_graph_points(leaf, depth) for leaf in leaves if isinstance(leaf, GraphLeaf)]
    heights = [Fraction(0)]
    for step in range(depth + 1):
        heights.extend((Fraction(2**step), -Fraction(2**step)))
    heights.extend(point[1] for points in graph_points for point in points)
    heights = list(dict.fromkeys(heights))
    return [
        list(_graph_points(leaf, depth)) if isinstance(leaf, GraphLeaf) else [(leaf.a, y) for y in heights]
        for leaf in leaves
    ]


def _as_floats(points):
    xs, ys = zip(*points)
    return np.array([float(v) for v in xs]), np.array([float(v) for v in ys])


def _sign_changes(leaf, xs, ys):
    r_part = np.polyval(leaf.map.r.float_coeffs(), xs)
    s_part = np.polyval(leaf.map.s.float_coeffs(), xs) * ys
    level = float(leaf.level)
    values = r_part + s_part - level
    signs = np.sign(values)
    # too close to call in floating point: left to the exact check
    signs[np.abs(values) <= 1e-9 * (np.abs(r_part) + np.abs(s_part) + abs(level))] = 0
    inside = np.ones(xs.shape, dtype=bool)
    if leaf.lo is not None:
        inside &= xs > float(leaf.lo)
    if leaf.hi is not None:
        inside &= xs < float(leaf.hi)
    return (signs[..., :-1] * signs[..., 1:] < 0) & inside[..., :-1] & inside[..., 1:]


def _edge_screen(leaves, starts, ends):
    """clear[i, j] is False when some leaf changes sign along the samples of starts[i] -> ends[j]"""
    sx, sy = _as_floats(starts)
    ex, ey = _as_floats(ends)
    clear = np.ones((len(starts), len(ends)), dtype=bool)
    with np.errstate(all="ignore"):
        xs = sx[:, None, None] + (ex[None, :] - sx[:, None])[:, :, None] * _SCREEN_GRID
        ys = sy[:, None, None] + (ey[None, :] - sy[:, None])[:, :, None] * _SCREEN_GRID
        for leaf in leaves:
            if isinstance(leaf, VerticalLeaf):
                a = float(leaf.a)
                clear &= ~((np.minimum.outer(sx, ex) < a) & (a < np.maximum.outer(sx, ex)))
                continue
            clear &= ~_sign_changes(leaf, xs, ys).any(axis=-1)
    return clear


def _screened_triangles(leaves, vertices):
    """Candidate triangles whose three edges pass the float screen, plainest vertices first"""
    edges = []
    for i in range(3):
        starts, ends = vertices[i], vertices[(i + 1) % 3]
        try:
            edges.append(_edge_screen(leaves, starts, ends))
        except OverflowError:
            # coordinates beyond float range: every pair goes to the exact check
            edges.append(np.ones((len(starts), len(ends)), dtype=bool))
    passed = edges[0][:, :, None] & edges[1][None, :, :] & edges[2].T[:, None, :]
    indices = np.argwhere(passed)
    for i, j, k in indices[np.argsort(indices.sum(axis=1), kind="stable")]:
        yield vertices[0][i], vertices[1][j], vertices[2][k]


def _signed_area(points):
    (x1, y1), (x2, y2), (x3, y3) = points
    return (x2 - x1) * (y3 - y1) - (y2 - y1) * (x3 - x1)


def _exact_clear(leaves, points):
    for i in range(3):
        start, end = points[i], points[(i + 1) % 3]
        if any(segment_meets(leaf, start, end) for leaf in leaves):
            return False
    return True


def cycle_orientation(l1, l2, l3, budget):
    """Sign of a validated witness triangle, or INCONCLUSIVE after budget exact checks"""
    leaves = (l1, l2, l3)
    tried = set()
    for depth in DEPTH_TIERS:
        for points in _screened_triangles(leaves, _candidate_vertices(leaves, depth)):
            area = _signed_area(points)
            if area == 0 or points in tried:
                continue
            tried.add(points)
            if _exact_clear(leaves, points):
                return ChordalRelation.CYCLIC_POSITIVE if area > 0 else ChordalRelation.CYCLIC_NEGATIVE
            if len(tried) >= budget:
                return ChordalRelation.INCONCLUSIVE
    return ChordalRelation.INCONCLUSIVE


def separation(l1, l2, l3):
    """The separation relation of the triple, or None when no member separates the other two"""
    if separates(l2, l1, l3):
        return ChordalRelation.SEPARATION_1
    if separates(l1, l2, l3):
        return ChordalRelation.SEPARATION_2
    if separates(l1, l3, l2):
        return ChordalRelation.SEPARATION_3
    return None


@lru_cache(maxsize=CACHE_SIZE)
def classify_triple(l1, l2, l3, budget=32):
    """Which leaf separates the other two, or the sign of the cycle"""
    return separation(l1, l2, l3) or cycle_orientation(l1, l2, l3, budget)


def _rational_roots(configuration):
    roots = [rational_value(root) for root in configuration.roots]
    values = [rational_value(value) for value in configuration.boundary_values]
    if any(v is None for v in roots + values):
        raise OracleScopeError("the oracle needs rational roots of s and rational boundary values")
    return roots, values


def vertical_leaf(configuration, index):
    roots, _ = _rational_roots(configuration)
    return VerticalLeaf(roots[index])


def strip_bounds(configuration, strip_index):
    roots, _ = _rational_roots(configuration)
    strip = configuration.strips[strip_index]
    lo = None if strip.left is None else roots[strip.left]
    hi = None if strip.right is None else roots[strip.right]
    return lo, hi


def separatrix_leaf(configuration, sep_id):
    if isinstance(sep_id, Vertical):
        return vertical_leaf(configuration, sep_id.root)
    lo, hi = strip_bounds(configuration, sep_id.strip)
    level = rational_value(configuration.level_of(sep_id))
    return GraphLeaf(lo, hi, level, configuration.map)


def region_leaf(configuration, region, level):
    lo, hi = strip_bounds(configuration, region.strip)
    return GraphLeaf(lo, hi, Fraction(level), configuration.map)


def _anchor(region):
    """Inner separatrix on the region boundary that orders its samples"""
    inner = sorted((s for s in region.boundary if isinstance(s, Inner)), key=separatrix_sort_key)
    return inner[0] if inner else None


def _from_lower(configuration, region, anchor):
    if anchor is None or region.lower is None:
        return anchor is None
    return rational_value(region.lower) == rational_value(configuration.level_of(anchor))


def sample_levels(region, count, from_lower):
    """count rational levels inside the region, ordered away from the anchoring bound"""
    lo = None if region.lower is None else rational_value(region.lower)
    hi = None if region.upper is None else rational_value(region.upper)
    if lo is not None and hi is not None:
        step = (hi - lo) / (count + 1)
        levels = [lo + step * i for i in range(1, count + 1)]
        return levels if from_lower else levels[::-1]
    if lo is None and hi is None:
        return [Fraction(i) for i in range(count)]
    if lo is not None:
        return [lo + i for i in range(1, count + 1)]
    return [hi - i for i in range(1, count + 1)]


def _region_count(configuration, samples_per_region):
    # a trivial foliation has one region; three leaves make a triple
    return max(samples_per_region, 3) if configuration.is_trivial else samples_per_region


def _region_samples(configuration, region, count, anchor):
    levels = sample_levels(region, count, _from_lower(configuration, region, anchor))
    return {f"{region.label}#{i}": region_leaf(configuration, region, level) for i, level in enumerate(levels)}


def sample_leaves(configuration, samples_per_region=1):
    """{label: leaf} for every separatrix and samples_per_region leaves per canonical region"""
    _rational_roots(configuration)
    leaves = {sep_id.label: separatrix_leaf(configuration, sep_id) for sep_id, _ in separatrices(configuration)}
    count = _region_count(configuration, samples_per_region)
    for region in configuration.regions:
        leaves.update(_region_samples(configuration, region, count, _anchor(region)))
    return leaves


@dataclass
class CorrespondenceReport:
    transformation: object
    checked: int = 0
    violations: list = field(default_factory=list)
    inconclusive: list = field(default_factory=list)
    unmatched: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.violations


def _image_leaves(p, q, transformation, samples_per_region):
    """(p label -> q label or None, q leaves), region samples ordered from the image of p's anchor"""
    _rational_roots(q)
    k = p.k
    images = {}
    q_leaves = {}
    q_separatrices = {sep_id for sep_id, _ in separatrices(q)}
    for sep_id, _ in separatrices(p):
        image = map_separatrix(sep_id, k, transformation)
        if image in q_separatrices:
            images[sep_id.label] = image.label
            q_leaves[image.label] = separatrix_leaf(q, image)
        else:
            images[sep_id.label] = None

    q_regions = {(region.strip, region.boundary): region for region in q.regions}
    count = _region_count(p, samples_per_region)
    for region in p.regions:
        key = (map_strip_index(region.strip, k, transformation), map_boundary(region.boundary, k, transformation))
        image = q_regions.get(key)
        anchor = _anchor(region)
        if image is None:
            images.update({f"{region.label}#{i}": None for i in range(count)})
            continue
        image_anchor = None if anchor is None else map_separatrix(anchor, k, transformation)
        samples = _region_samples(q, image, count, image_anchor)
        q_leaves.update(samples)
        images.update({f"{region.label}#{i}": f"{image.label}#{i}" for i in range(count)})
    return images, q_leaves


def _expected(relation, transformation):
    return relation if transformation.preserves_orientation else relation.reversed()


def check_correspondence(p, q, transformation, samples_per_region=1, budget=32, enforce_match=True):
    """Classify every sampled triple of p and of its image in q and report broken relations"""
    if p.k != q.k:
        raise PreconditionViolated(f"vertical counts differ: {p.k} and {q.k}")
    if enforce_match and not p.is_trivial and transformation not in token_match(p, q):
        raise PreconditionViolated(f"{transformation.label} does not match the strip tokens")
    p_leaves = sample_leaves(p, samples_per_region)
    images, q_leaves = _image_leaves(p, q, transformation, samples_per_region)

    report = CorrespondenceReport(transformation)
    report.unmatched = sorted(label for label, image in images.items() if image is None)
    labels = [label for label in p_leaves if label not in report.unmatched]
    triples = list(itertools.combinations(labels, 3))
    logger.info(f"🔍 checking {len(triples)} triples under {transformation.label}")

    for triple in tqdm(triples, desc="triples", disable=None, leave=False):
        relation_p = classify_triple(*(p_leaves[label] for label in triple), budget=budget)
        relation_q = classify_triple(*(q_leaves[images[label]] for label in triple), budget=budget)
        report.checked += 1
        entry = {
            "triple": list(triple),
            "image": [images[label] for label in triple],
            "relation_p": relation_p.value,
            "relation_q": relation_q.value,
        }
        expected = _expected(relation_p, transformation)
        undecided = ChordalRelation.INCONCLUSIVE in (relation_p, relation_q)
        if relation_p.is_separation or relation_q.is_separation:
            if expected != relation_q:
                report.violations.append(entry)
        elif undecided:
            report.inconclusive.append(entry)
        elif expected != relation_q:
            report.violations.append(entry)

    status = "✅" if report.passed else "❌"
    logger.info(
        f"{status} {report.checked} triples, {len(report.violations)} violations, "
        f"{len(report.inconclusive)} inconclusive"
    )
    return report


def end_cycle_signs(configuration, budget=32):
    """[(strip, end, expected sign, relation)] at each finite strip end

    The cycle is (vertical, leaf of the region between them, inner curve attached there).
    """
    results = []
    for strip, token in zip(configuration.strips, configuration.tokens):
        for end, root in (("a", strip.left), ("b", strip.right)):
            if root is None:
                continue
            attach = _attachment_at(token, end)
            curve_id = Inner(strip.index, attach)
            region = next(
                r
                for r in configuration.regions_in(strip.index)
                if Vertical(root) in r.boundary and curve_id in r.boundary
            )
            level = sample_levels(region, 1, _from_lower(configuration, region, curve_id))[0]
            relation = classify_triple(
                vertical_leaf(configuration, root),
                region_leaf(configuration, region, level),
                separatrix_leaf(configuration, curve_id),
                budget=budget,
            )
            limit = token.signs[0] if end == "a" else -token.signs[-1]
            results.append((strip.index, end, limit, relation))
    return results


def _attachment_at(token, end):
    if token.kind == "BE":
        return Attachment.BOTH
    return Attachment.LEFT if end == "a" else Attachment.RIGHT
