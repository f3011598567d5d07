"""
SVG portrait of a separatrix configuration.

Verticals are dashed lines, inner separatrices bold paths and each canonical
region contributes one thin sampled leaf.  Strokes are keyed by level through
the classes level-0, level-1, ... in increasing level order.
"""

import logging
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from src.algebra.realalg import approx
from src.foliation.configuration import Inner, separatrices
from src.utils.errors import EmptyViewportError, InputError

logger = logging.getLogger(__name__)

SVG_NS = "http://www.w3.org/2000/svg"
BLOWUP_FACTOR = 10
FAN_LEVELS = 9


@dataclass(frozen=True)
class Viewport:
    x_min: Fraction
    x_max: Fraction
    y_min: Fraction
    y_max: Fraction
    width_px: int = 800
    height_px: int = 600
    samples_per_curve: int = 400

    def __post_init__(self):
        if not self.x_min < self.x_max or not self.y_min < self.y_max:
            raise EmptyViewportError(
                f"viewport [{self.x_min}, {self.x_max}] x [{self.y_min}, {self.y_max}] is empty"
            )
        if self.width_px < 1 or self.height_px < 1:
            raise EmptyViewportError(f"image size {self.width_px}x{self.height_px} has no pixels")
        if self.samples_per_curve < 16:
            raise EmptyViewportError(f"{self.samples_per_curve} samples per curve, need at least 16")

    @property
    def height(self):
        return float(self.y_max - self.y_min)

    def to_pixels(self, xs, ys):
        px = (xs - float(self.x_min)) / float(self.x_max - self.x_min) * self.width_px
        py = (float(self.y_max) - ys) / self.height * self.height_px
        return px, py


def parse_viewport(text, size=None, samples=400):
    """Viewport from "x0,x1,y0,y1" and an optional "WxH" size"""
    try:
        bounds = [Fraction(part.strip()) for part in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise InputError(f"viewport {text!r} is not four rationals", expected="x0,x1,y0,y1")
    if len(bounds) != 4:
        raise InputError(f"viewport {text!r} needs four values", expected="x0,x1,y0,y1")
    width, height = parse_size(size) if size else (800, 600)
    return Viewport(*bounds, width_px=width, height_px=height, samples_per_curve=samples)


def parse_size(text):
    try:
        width, height = (int(part) for part in text.lower().split("x"))
    except ValueError:
        raise InputError(f"size {text!r} is not WxH", expected="WxH")
    return width, height


def _nice(value):
    return Fraction(value).limit_denominator(1000)


def default_viewport(configuration, width_px=800, height_px=600, samples=400):
    """Frame every vertical with a margin of half their spread, at least 2"""
    if configuration.is_trivial:
        return Viewport(Fraction(-5), Fraction(5), Fraction(-5), Fraction(5), width_px, height_px, samples)
    xs = [approx(root) for root in configuration.roots]
    margin = max(2.0, (max(xs) - min(xs)) / 2)
    return Viewport(
        _nice(min(xs) - margin),
        _nice(max(xs) + margin),
        Fraction(-6),
        Fraction(6),
        width_px,
        height_px,
        samples,
    )


def _strip_limits(configuration, strip_index):
    strip = configuration.strips[strip_index]
    lo = -np.inf if strip.left is None else approx(configuration.roots[strip.left])
    hi = np.inf if strip.right is None else approx(configuration.roots[strip.right])
    return lo, hi


def _graph_runs(linear_map, level, limits, viewport):
    """Visible runs of the graph of (level - r)/s inside the strip, split where samples blow up"""
    xs = np.linspace(float(viewport.x_min), float(viewport.x_max), viewport.samples_per_curve)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        denominators = np.polyval(linear_map.s.float_coeffs(), xs)
        ys = (level - np.polyval(linear_map.r.float_coeffs(), xs)) / denominators
    keep = (xs > limits[0]) & (xs < limits[1]) & (denominators != 0) & np.isfinite(ys)
    keep &= np.abs(ys) <= BLOWUP_FACTOR * viewport.height

    runs, current = [], []
    for x, y, ok in zip(xs, ys, keep):
        if ok:
            current.append((x, y))
        elif current:
            runs.append(current)
            current = []
    if current:
        runs.append(current)
    return [run for run in runs if len(run) > 1]


def _path_data(runs, viewport):
    commands = []
    for run in runs:
        px, py = viewport.to_pixels(*(np.array(axis) for axis in zip(*run)))
        points = [f"{x:.2f} {y:.2f}" for x, y in zip(px, py)]
        commands.append("M" + " L".join(points))
    return " ".join(commands)


def _region_level(region):
    """A float level strictly inside the region's interval"""
    lower = None if region.lower is None else approx(region.lower)
    upper = None if region.upper is None else approx(region.upper)
    if lower is not None and upper is not None:
        return (lower + upper) / 2
    if lower is not None:
        return lower + 1
    if upper is not None:
        return upper - 1
    return 0.0


def _level_classes(levels):
    distinct = sorted({round(level, 12) for level in levels})
    return {level: f"level-{distinct.index(round(level, 12))}" for level in levels}


def _style(count):
    rules = [
        "path, line { fill: none; }",
        ".vertical { stroke-width: 2; stroke-dasharray: 8 4; }",
        ".separatrix { stroke-width: 2.5; }",
        ".leaf { stroke-width: 0.8; }",
    ]
    for index in range(count):
        hue = round(360 * index / max(count, 1))
        rules.append(f".level-{index} {{ stroke: hsl({hue}, 70%, 40%); }}")
    return "\n".join(rules)


def _fan_levels(configuration, viewport):
    centre_x = float(viewport.x_min + viewport.x_max) / 2
    centre_y = float(viewport.y_min + viewport.y_max) / 2
    linear_map = configuration.map
    base = float(linear_map(Fraction(centre_x), Fraction(centre_y)))
    slope = abs(float(linear_map.s(Fraction(centre_x)))) or 1.0
    step = slope * viewport.height / (FAN_LEVELS - 1)
    return [base + step * (i - FAN_LEVELS // 2) for i in range(FAN_LEVELS)]


def render_svg(configuration, viewport):
    """SVG document bytes for the configuration inside the viewport"""
    curves = []
    verticals = []
    if configuration.is_trivial:
        limits = (-np.inf, np.inf)
        curves = [("leaf region", level, limits) for level in _fan_levels(configuration, viewport)]
    else:
        for sep_id, level in separatrices(configuration):
            if isinstance(sep_id, Inner):
                curves.append(("separatrix", approx(level), _strip_limits(configuration, sep_id.strip)))
            else:
                verticals.append((approx(configuration.roots[sep_id.root]), approx(level)))
        for region in configuration.regions:
            curves.append(("leaf region", _region_level(region), _strip_limits(configuration, region.strip)))

    classes = _level_classes([level for _, level in verticals] + [level for _, level, _ in curves])

    root = ET.Element(
        "svg",
        xmlns=SVG_NS,
        version="1.1",
        width=f"{viewport.width_px}px",
        height=f"{viewport.height_px}px",
        viewBox=f"0 0 {viewport.width_px} {viewport.height_px}",
    )
    style = ET.SubElement(root, "style")
    style.text = _style(len(set(classes.values())))
    defs = ET.SubElement(root, "defs")
    clip = ET.SubElement(defs, "clipPath", id="frame")
    ET.SubElement(clip, "rect", x="0", y="0", width=str(viewport.width_px), height=str(viewport.height_px))
    group = ET.SubElement(root, "g", {"clip-path": "url(#frame)"})

    for x, level in verticals:
        px, _ = viewport.to_pixels(np.array([x]), np.array([0.0]))
        ET.SubElement(
            group,
            "line",
            {
                "class": f"vertical {classes[level]}",
                "x1": f"{px[0]:.2f}",
                "y1": "0",
                "x2": f"{px[0]:.2f}",
                "y2": str(viewport.height_px),
            },
        )
    for kind, level, limits in curves:
        runs = _graph_runs(configuration.map, level, limits, viewport)
        ET.SubElement(group, "path", {"class": f"{kind} {classes[level]}", "d": _path_data(runs, viewport)})

    logger.info(f"💾 rendered {len(verticals)} verticals and {len(curves)} curves")
    return ET.tostring(root, encoding="utf-8", xml_declaration=True)
