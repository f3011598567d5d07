"""
Tests for equivalence verdicts, induced sigma and the symmetry group.
"""

import itertools
import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.algebra.expr import parse_map
from src.algebra.realalg import Exact, rational_value
from src.foliation.configuration import build_configuration
from src.foliation.equivalence import (
    TRY_ORDER,
    VERDICTS,
    Monotonicity,
    Obstruction,
    Transformation,
    classify_sigma,
    decide,
    induced_sigma,
    singleton_extension_check,
    token_match,
    transform_tokens,
)
from src.utils.errors import PreconditionViolated
from src.utils.strategies import valid_maps

SHARED_P = "x*(7*x-5)+(x+1)^2*x^2*(x-2)^2*y"
SHARED_Q = "2*x*(4*x-5)+(x+1)^2*x^2*(x-2)^2*y"
CUBIC = "x + x^3*y"
DECREASING_P = "x*(3-2*x) + (x-1)^2*x^2*y"
DECREASING_Q = "(x-1)*(2*x-1) - (x-1)^2*x^2*y"
MIRRORED_P = "x + (x+1)^2*x^2*(x-1)^2*y"
MIRRORED_Q = "-x + (x+1)^2*x^2*(x-1)^2*y"


def configuration(text):
    return build_configuration(parse_map(text))


def verdicts(verdict):
    return {name: verdict.holds(name) for name in VERDICTS}


def sigma_values(sigma):
    return [(rational_value(a), rational_value(b)) for a, b in sigma.pairs]


def test_klein_group_laws():
    for a, b, c in itertools.product(Transformation, repeat=3):
        assert a.compose(b) == b.compose(a)
        assert a.compose(b).compose(c) == a.compose(b.compose(c))
    for t in Transformation:
        assert t.compose(t) == Transformation.IDENTITY
    assert Transformation.HFLIP.compose(Transformation.VFLIP) == Transformation.ROTATION
    assert Transformation.from_label("rotation") is Transformation.ROTATION


def test_try_order_prefers_identity():
    assert TRY_ORDER[0] is Transformation.IDENTITY
    assert TRY_ORDER[1] is Transformation.ROTATION


def test_transform_tokens_is_an_action():
    tokens = list(configuration(SHARED_P).tokens)
    for a, b in itertools.product(Transformation, repeat=2):
        assert transform_tokens(transform_tokens(tokens, a), b) == transform_tokens(tokens, a.compose(b))


def test_first_pair_verdicts():
    p, q = configuration(SHARED_P), configuration(SHARED_Q)
    assert token_match(p, q) == [Transformation.IDENTITY]
    sigma = induced_sigma(p, q, Transformation.IDENTITY)
    assert sigma_values(sigma) == [(12, 18), (0, 0), (18, 12)]
    assert sigma.monotonicity is Monotonicity.NOT_MONOTONE
    verdict = decide(p, q)
    assert verdicts(verdict) == {
        "foliation_o": True,
        "foliation_top": True,
        "function_o": False,
        "function_top": False,
    }
    assert verdict.obstructions["function_top"] is Obstruction.SIGMA_NOT_MONOTONE


def test_cubic_against_its_negative():
    p, q = configuration(CUBIC), configuration("-x - x^3*y")
    assert token_match(p, q) == [Transformation.IDENTITY, Transformation.HFLIP]
    assert not singleton_extension_check(p, q, Transformation.IDENTITY)
    verdict = decide(p, q)
    assert verdict.foliation_o and verdict.foliation_top and verdict.function_top
    assert not verdict.function_o
    assert verdict.obstructions["function_o"] is Obstruction.EXTENSION_FAILS


def test_decreasing_pair():
    p, q = configuration(DECREASING_P), configuration(DECREASING_Q)
    assert token_match(p, q) == [Transformation.IDENTITY]
    sigma = induced_sigma(p, q, Transformation.IDENTITY)
    assert sigma_values(sigma) == [(0, 1), (1, 0)]
    assert sigma.monotonicity is Monotonicity.DECREASING
    verdict = decide(p, q)
    assert verdict.function_top and verdict.foliation_o
    assert verdict.witnesses["function_top"].sigma.monotonicity is Monotonicity.DECREASING
    assert not verdict.function_o
    assert verdict.obstructions["function_o"] is Obstruction.SIGMA_NOT_INCREASING


def test_mirrored_pair():
    p, q = configuration(MIRRORED_P), configuration(MIRRORED_Q)
    assert token_match(p, q) == [Transformation.HFLIP, Transformation.VFLIP]
    verdict = decide(p, q)
    assert not verdict.foliation_o
    assert verdict.foliation_top
    assert verdict.witnesses["foliation_top"].transformation is Transformation.HFLIP
    assert verdict.function_top
    assert verdict.witnesses["function_top"].sigma.monotonicity is Monotonicity.INCREASING
    assert not verdict.function_o


def test_trivial_pair_all_true():
    verdict = decide(configuration("x + y"), configuration("-5*x^3 + x + (2 + x^2)*y"))
    assert all(verdicts(verdict).values())


def test_trivial_against_nontrivial():
    verdict = decide(configuration("x + y"), configuration(CUBIC))
    assert not any(verdicts(verdict).values())
    assert verdict.obstructions["foliation_top"] is Obstruction.TRIVIAL_VS_NONTRIVIAL


def test_vertical_count_mismatch():
    verdict = decide(configuration(CUBIC), configuration(SHARED_P))
    assert verdict.obstructions["foliation_o"] is Obstruction.K_MISMATCH


def test_token_mismatch():
    verdict = decide(configuration(SHARED_P), configuration("x*(x-1) + x^2*(x-1)^2*(x+1)^2*y"))
    assert not verdict.foliation_top
    assert verdict.obstructions["foliation_top"] is Obstruction.TOKEN_MISMATCH


def test_token_match_needs_verticals():
    with pytest.raises(PreconditionViolated):
        token_match(configuration("x + y"), configuration("x + y"))


def test_extension_check_preconditions():
    p, q = configuration(CUBIC), configuration("-x - x^3*y")
    with pytest.raises(PreconditionViolated):
        singleton_extension_check(p, q, Transformation.HFLIP)
    with pytest.raises(PreconditionViolated):
        singleton_extension_check(configuration(SHARED_P), configuration(SHARED_Q), Transformation.IDENTITY)


@pytest.mark.parametrize(
    "pairs, expected",
    [
        ([], Monotonicity.INCREASING),
        ([(0, 5)], Monotonicity.INCREASING),
        ([(0, 1), (1, 2), (0, 1)], Monotonicity.INCREASING),
        ([(0, 1), (1, 0)], Monotonicity.DECREASING),
        ([(0, 1), (1, 3), (2, 2)], Monotonicity.NOT_MONOTONE),
        ([(0, 1), (0, 2)], Monotonicity.ILL_DEFINED),
        ([(0, 1), (1, 1)], Monotonicity.ILL_DEFINED),
    ],
)
def test_classify_sigma(pairs, expected):
    sigma = classify_sigma([(Exact(a), Exact(b)) for a, b in pairs])
    assert sigma.monotonicity is expected


def test_sigma_inverse_keeps_monotonicity():
    sigma = classify_sigma([(Exact(0), Exact(1)), (Exact(1), Exact(0))])
    assert sigma.inverse().monotonicity is Monotonicity.DECREASING


@given(valid_maps())
@settings(max_examples=100, deadline=None)
def test_decide_is_reflexive(linear_map):
    p = build_configuration(linear_map)
    assert all(verdicts(decide(p, p)).values())


@given(valid_maps(), st.sampled_from(["identity", "hflip", "vflip", "rotation"]))
@settings(max_examples=100, deadline=None)
def test_decide_is_symmetric(linear_map, name):
    p = build_configuration(linear_map)
    q = build_configuration(linear_map.transformed(name))
    assert verdicts(decide(p, q)) == verdicts(decide(q, p))


@given(valid_maps())
@settings(max_examples=100, deadline=None)
def test_symmetric_images_are_topologically_equivalent(linear_map):
    p = build_configuration(linear_map)
    for name in ("hflip", "vflip", "rotation"):
        q = build_configuration(linear_map.transformed(name))
        verdict = decide(p, q)
        assert verdict.foliation_top
        assert verdict.function_top


@given(
    valid_maps(),
    st.integers(1, 5).map(Fraction),
    st.integers(-4, 4).map(Fraction),
)
@settings(max_examples=80, deadline=None)
def test_increasing_affine_level_change_is_invisible(linear_map, alpha, beta):
    p = build_configuration(linear_map)
    q = build_configuration(linear_map.compose_level(alpha, beta))
    assert all(verdicts(decide(p, q)).values())


@given(valid_maps(), st.integers(-5, -1).map(Fraction))
@settings(max_examples=60, deadline=None)
def test_decreasing_level_change_keeps_topological_equivalence(linear_map, alpha):
    p = build_configuration(linear_map)
    q = build_configuration(linear_map.compose_level(alpha, Fraction(0)))
    verdict = decide(p, q)
    assert verdict.foliation_top
    assert verdict.function_top


@given(valid_maps(), st.integers(-3, 3).map(Fraction), st.integers(1, 4).map(Fraction))
@settings(max_examples=80, deadline=None)
def test_shift_and_positive_rescale_is_invisible(linear_map, offset, factor):
    p = build_configuration(linear_map)
    q = build_configuration(linear_map.shift_rescale(offset, factor))
    assert all(verdicts(decide(p, q)).values())


def test_symmetries_with_irrational_verticals():
    linear_map = parse_map("x + (x^2-2)^2*(x-1)^2*y")
    p = build_configuration(linear_map)
    assert sum(not isinstance(root, Exact) for root in p.roots) == 2
    for name in ("hflip", "vflip", "rotation"):
        verdict = decide(p, build_configuration(linear_map.transformed(name)))
        assert verdict.foliation_top
        assert verdict.function_top
    shifted = build_configuration(linear_map.shift_rescale(Fraction(1), Fraction(2)))
    assert all(verdicts(decide(p, shifted)).values())


FIXTURE_FILE = Path(__file__).resolve().parents[2] / "data" / "fixture_pairs.json"
FIXTURE_PAIRS = json.loads(FIXTURE_FILE.read_text(encoding="utf-8"))["pairs"]


@pytest.mark.parametrize("pair", FIXTURE_PAIRS, ids=[pair["name"] for pair in FIXTURE_PAIRS])
def test_recorded_fixture_verdicts(pair):
    verdict = decide(configuration(pair["p"]), configuration(pair["q"]))
    assert verdicts(verdict) == pair["expected"]
