"""
Tests for the SVG portrait.
"""

import xml.etree.ElementTree as ET
from fractions import Fraction

import pytest

from src.algebra.expr import parse_map
from src.foliation.configuration import build_configuration
from src.render.svg import Viewport, default_viewport, parse_viewport, render_svg
from src.utils.errors import EmptyViewportError, InputError

NS = {"svg": "http://www.w3.org/2000/svg"}


def portrait(text, viewport=None):
    configuration = build_configuration(parse_map(text))
    document = render_svg(configuration, viewport or default_viewport(configuration))
    return document, ET.fromstring(document)


def classes(root, tag):
    return [element.get("class").split() for element in root.iter(f"{{{NS['svg']}}}{tag}")]


def count(root, tag, name):
    return sum(1 for names in classes(root, tag) if name in names)


@pytest.mark.parametrize(
    "text, verticals, inner, regions",
    [
        ("x + x^3*y", 1, 2, 4),
        ("x*(7*x-5)+(x+1)^2*x^2*(x-2)^2*y", 3, 6, 10),
    ],
)
def test_element_counts_follow_the_configuration(text, verticals, inner, regions):
    _, root = portrait(text)
    assert count(root, "line", "vertical") == verticals
    assert count(root, "path", "separatrix") == inner
    assert count(root, "path", "region") == regions


def test_trivial_map_draws_a_fan():
    _, root = portrait("x + y")
    assert count(root, "line", "vertical") == 0
    assert count(root, "path", "separatrix") == 0
    assert count(root, "path", "leaf") == 9


def test_leaves_on_one_level_share_a_class():
    _, root = portrait("x + x^3*y")
    level_of = {}
    for names in classes(root, "line") + classes(root, "path"):
        level = next(name for name in names if name.startswith("level-"))
        kind = names[0]
        level_of.setdefault(kind, set()).add(level)
    # the vertical and both inner curves sit on level 0
    assert level_of["vertical"] == level_of["separatrix"]


def test_rendering_is_deterministic():
    first, _ = portrait("x*(3-2*x) + (x-1)^2*x^2*y")
    second, _ = portrait("x*(3-2*x) + (x-1)^2*x^2*y")
    assert first == second
    assert first.startswith(b"<?xml")


def test_blowups_split_paths():
    viewport = Viewport(Fraction(-2), Fraction(2), Fraction(-1), Fraction(1), samples_per_curve=101)
    _, root = portrait("x + x^3*y", viewport)
    for element in root.iter(f"{{{NS['svg']}}}path"):
        assert "nan" not in element.get("d")
        assert "inf" not in element.get("d")


def test_viewport_validation():
    with pytest.raises(EmptyViewportError):
        Viewport(Fraction(1), Fraction(1), Fraction(0), Fraction(1))
    with pytest.raises(EmptyViewportError):
        Viewport(Fraction(0), Fraction(1), Fraction(0), Fraction(1), samples_per_curve=8)
    with pytest.raises(InputError):
        parse_viewport("0,1,2")
    viewport = parse_viewport("-3, 3, -1/2, 5", "400x300")
    assert viewport.y_min == Fraction(-1, 2)
    assert (viewport.width_px, viewport.height_px) == (400, 300)
