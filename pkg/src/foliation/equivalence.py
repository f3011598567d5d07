"""
Equivalence verdicts for pairs of configurations.

Two foliations are equivalent when their strip tokens agree up to one of the
four coordinate symmetries (x, y) -> (+-x, +-y).  Function equivalence further
needs the bijection of bifurcation values forced by the vertical separatrices
to be monotone (increasing for orientation-preserving equivalence).
"""

import enum
import logging
from dataclasses import dataclass, field

from src.algebra.realalg import Ordering, compare, sort_key
from src.foliation.configuration import Inner, Vertical
from src.utils.errors import PreconditionViolated

logger = logging.getLogger(__name__)


class Transformation(enum.IntEnum):
    """Klein four-group: bit 0 mirrors x, bit 1 mirrors y"""

    IDENTITY = 0
    HFLIP = 1
    VFLIP = 2
    ROTATION = 3

    def compose(self, other):
        return Transformation(self ^ other)

    @property
    def preserves_orientation(self):
        return self in (Transformation.IDENTITY, Transformation.ROTATION)

    @property
    def mirrors_x(self):
        return bool(self & Transformation.HFLIP)

    @property
    def mirrors_y(self):
        return bool(self & Transformation.VFLIP)

    @property
    def label(self):
        return self.name.lower()

    @classmethod
    def from_label(cls, label):
        return cls[label.upper()]


# Identity before Rotation when palindromic tokens match both
TRY_ORDER = (Transformation.IDENTITY, Transformation.ROTATION, Transformation.HFLIP, Transformation.VFLIP)


class Monotonicity(enum.Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"
    NOT_MONOTONE = "not_monotone"
    ILL_DEFINED = "ill_defined"


@dataclass(frozen=True)
class InducedSigma:
    """pairs[j] = (value of vertical j in p, value of its image vertical in q)"""

    pairs: tuple
    monotonicity: Monotonicity

    @property
    def is_monotone(self):
        return self.monotonicity in (Monotonicity.INCREASING, Monotonicity.DECREASING)

    def inverse(self):
        return classify_sigma([(to, frm) for frm, to in self.pairs])


class Obstruction(enum.Enum):
    TRIVIAL_VS_NONTRIVIAL = "exactly one of the maps has no vertical separatrices"
    K_MISMATCH = "the maps have different numbers of vertical separatrices"
    TOKEN_MISMATCH = "no admissible symmetry matches the strip tokens"
    SIGMA_ILL_DEFINED = "equal bifurcation values are sent to different values"
    SIGMA_NOT_MONOTONE = "the induced map of bifurcation values is not monotone"
    SIGMA_NOT_INCREASING = "the induced map of bifurcation values is decreasing"
    EXTENSION_FAILS = "no ordinary leaf keeps its side of the single bifurcation value"


OBSTRUCTION_PRIORITY = list(Obstruction)

VERDICTS = ("foliation_o", "foliation_top", "function_o", "function_top")


@dataclass(frozen=True)
class Witness:
    transformation: Transformation
    sigma: InducedSigma


@dataclass(frozen=True)
class EquivalenceVerdict:
    foliation_o: bool
    foliation_top: bool
    function_o: bool
    function_top: bool
    witnesses: dict = field(default_factory=dict)
    obstructions: dict = field(default_factory=dict)
    matches: tuple = ()

    def holds(self, name):
        return getattr(self, name)


def transform_tokens(tokens, transformation):
    result = list(tokens)
    if transformation.mirrors_x:
        result = [token.mirrored() for token in reversed(result)]
    if transformation.mirrors_y:
        result = [token.negated() for token in result]
    return result


def map_vertical_index(index, k, transformation):
    return k - 1 - index if transformation.mirrors_x else index


def map_strip_index(index, k, transformation):
    return k - index if transformation.mirrors_x else index


def map_separatrix(sep_id, k, transformation):
    if isinstance(sep_id, Vertical):
        return Vertical(map_vertical_index(sep_id.root, k, transformation))
    attach = sep_id.attach.swapped() if transformation.mirrors_x else sep_id.attach
    return Inner(map_strip_index(sep_id.strip, k, transformation), attach)


def map_boundary(boundary, k, transformation):
    return frozenset(map_separatrix(sep_id, k, transformation) for sep_id in boundary)


def token_match(p, q):
    """All t with tokens(p) == t(tokens(q)), in TRY_ORDER"""
    if p.is_trivial or q.is_trivial:
        raise PreconditionViolated("token matching needs at least one vertical separatrix on each side")
    return [t for t in TRY_ORDER if list(p.tokens) == transform_tokens(q.tokens, t)]


def classify_sigma(pairs):
    pairs = tuple(pairs)
    for i, (from_i, to_i) in enumerate(pairs):
        for from_j, to_j in pairs[i + 1:]:
            same_from = compare(from_i, from_j) == Ordering.EQUAL
            same_to = compare(to_i, to_j) == Ordering.EQUAL
            if same_from != same_to:
                return InducedSigma(pairs, Monotonicity.ILL_DEFINED)

    distinct = []
    for frm, to in pairs:
        if not any(compare(frm, seen) == Ordering.EQUAL for seen, _ in distinct):
            distinct.append((frm, to))
    order = sort_key()
    distinct.sort(key=lambda pair: order(pair[0]))
    steps = {compare(a[1], b[1]) for a, b in zip(distinct, distinct[1:])}
    if steps <= {Ordering.LESS}:
        monotonicity = Monotonicity.INCREASING
    elif steps == {Ordering.GREATER}:
        monotonicity = Monotonicity.DECREASING
    else:
        monotonicity = Monotonicity.NOT_MONOTONE
    return InducedSigma(pairs, monotonicity)


def induced_sigma(p, q, transformation):
    if p.k != q.k:
        raise PreconditionViolated(f"induced sigma needs equal vertical counts, got {p.k} and {q.k}")
    k = p.k
    pairs = [
        (p.boundary_values[j], q.boundary_values[map_vertical_index(j, k, transformation)]) for j in range(k)
    ]
    return classify_sigma(pairs)


def _below(region, value):
    return region.upper is not None and compare(region.upper, value) != Ordering.GREATER


def singleton_extension_check(p, q, transformation):
    """Some ordinary leaf of p and its image lie on the same side of the single bifurcation value"""
    if len(p.bifurcation) != 1 or len(q.bifurcation) != 1:
        raise PreconditionViolated("extension check needs singleton bifurcation sets")
    if not transformation.preserves_orientation:
        raise PreconditionViolated(f"{transformation.label} reverses orientation")
    if transformation not in token_match(p, q):
        raise PreconditionViolated(f"{transformation.label} does not match the strip tokens")
    value_p, value_q = p.bifurcation[0], q.bifurcation[0]
    k = p.k
    q_regions = {(region.strip, region.boundary): region for region in q.regions}
    for region in p.regions:
        key = (map_strip_index(region.strip, k, transformation), map_boundary(region.boundary, k, transformation))
        image = q_regions.get(key)
        if image is not None and _below(region, value_p) == _below(image, value_q):
            return True
    return False


def _all(value, witness=None, obstruction=None, matches=()):
    return EquivalenceVerdict(
        foliation_o=value,
        foliation_top=value,
        function_o=value,
        function_top=value,
        witnesses={name: witness for name in VERDICTS},
        obstructions={name: obstruction for name in VERDICTS},
        matches=tuple(matches),
    )


def _worst(codes):
    return max(codes, key=OBSTRUCTION_PRIORITY.index)


def decide(p, q):
    """The four verdicts for configurations p and q"""
    if p.is_trivial and q.is_trivial:
        return _all(True, Witness(Transformation.IDENTITY, classify_sigma([])))
    if p.is_trivial or q.is_trivial:
        return _all(False, obstruction=Obstruction.TRIVIAL_VS_NONTRIVIAL)
    if p.k != q.k:
        return _all(False, obstruction=Obstruction.K_MISMATCH)
    matches = token_match(p, q)
    if not matches:
        return _all(False, obstruction=Obstruction.TOKEN_MISMATCH)

    sigmas = {t: induced_sigma(p, q, t) for t in matches}
    witnesses = {name: None for name in VERDICTS}
    obstructions = {name: None for name in VERDICTS}

    preserving = [t for t in matches if t.preserves_orientation]
    witnesses["foliation_top"] = Witness(matches[0], sigmas[matches[0]])
    if preserving:
        witnesses["foliation_o"] = Witness(preserving[0], sigmas[preserving[0]])
    else:
        obstructions["foliation_o"] = Obstruction.TOKEN_MISMATCH

    failures = []
    for t in matches:
        sigma = sigmas[t]
        if sigma.is_monotone:
            witnesses["function_top"] = Witness(t, sigma)
            break
        failures.append(_sigma_obstruction(sigma))
    else:
        obstructions["function_top"] = _worst(failures)

    failures = [] if preserving else [Obstruction.TOKEN_MISMATCH]
    for t in preserving:
        sigma = sigmas[t]
        if sigma.monotonicity is not Monotonicity.INCREASING:
            failures.append(_sigma_obstruction(sigma))
            continue
        if len(p.bifurcation) == 1 and not singleton_extension_check(p, q, t):
            failures.append(Obstruction.EXTENSION_FAILS)
            continue
        witnesses["function_o"] = Witness(t, sigma)
        break
    else:
        obstructions["function_o"] = _worst(failures)

    verdict = EquivalenceVerdict(
        foliation_o=witnesses["foliation_o"] is not None,
        foliation_top=True,
        function_o=witnesses["function_o"] is not None,
        function_top=witnesses["function_top"] is not None,
        witnesses=witnesses,
        obstructions=obstructions,
        matches=tuple(matches),
    )
    logger.info(f"📊 matches {[t.label for t in matches]}: " + ", ".join(f"{n}={verdict.holds(n)}" for n in VERDICTS))
    return verdict


def _sigma_obstruction(sigma):
    return {
        Monotonicity.ILL_DEFINED: Obstruction.SIGMA_ILL_DEFINED,
        Monotonicity.NOT_MONOTONE: Obstruction.SIGMA_NOT_MONOTONE,
        Monotonicity.DECREASING: Obstruction.SIGMA_NOT_INCREASING,
    }[sigma.monotonicity]
