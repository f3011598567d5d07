#!/usr/bin/env python3
"""
Command-line front end: analyze, compare, render and oracle subcommands.

Results go to stdout as JSON; errors go to stderr as JSON with a stable code.
Exit codes: 0 success, 2 bad input, 3 oracle out of scope, 1 internal error.
"""

import argparse
import json
import logging
import sys
from pathlib import Path

import pandas as pd

from src.algebra.expr import parse_map
from src.algebra.realalg import AlgReal
from src.foliation.configuration import build_configuration
from src.foliation.equivalence import VERDICTS, Transformation, decide
from src.foliation.oracle import check_correspondence
from src.render.svg import default_viewport, parse_size, parse_viewport, render_svg
from src.utils.config import load_settings
from src.utils.errors import InputError, LinearLikeError, PreconditionViolated
from src.utils.logging_setup import configure_logging
from src.utils.serialize import algreal_to_dict, configuration_to_dict, report_to_dict, verdict_to_dict

logger = logging.getLogger(__name__)

TRANSFORM_NAMES = [t.label for t in Transformation]


def read_expression(argument):
    """The argument itself, or the contents of the file named after a leading @"""
    if not argument.startswith("@"):
        return argument
    path = Path(argument[1:])
    try:
        return path.read_text(encoding="utf-8").strip()
    except OSError as error:
        raise InputError(f"cannot read expression file {path}: {error.strerror}", path=str(path))


def load_configuration(argument, transform="identity"):
    linear_map = parse_map(read_expression(argument)).transformed(transform)
    return build_configuration(linear_map)


def build_parser(settings):
    parser = argparse.ArgumentParser(prog="linlike", description="Classify linear-like planar submersions")
    subparsers = parser.add_subparsers(dest="command", required=True)

    analyze = subparsers.add_parser("analyze", help="separatrix configuration of one map")
    analyze.add_argument("expr")
    analyze.add_argument("--transform", choices=TRANSFORM_NAMES, default="identity")
    analyze.add_argument("--pretty", action="store_true")

    compare = subparsers.add_parser("compare", help="equivalence verdicts for two maps")
    compare.add_argument("expr_p")
    compare.add_argument("expr_q")
    compare.add_argument("--oracle", action="store_true", help="cross-check witnesses in the plane")
    compare.add_argument("--budget", type=int, default=settings.oracle_budget)
    compare.add_argument("--samples", type=int, default=settings.samples_per_region)
    compare.add_argument("--pretty", action="store_true")

    render = subparsers.add_parser("render", help="SVG portrait of one map")
    render.add_argument("expr")
    render.add_argument("--viewport", help='"x0,x1,y0,y1"')
    render.add_argument("--size", default="800x600", help="WxH in pixels")
    render.add_argument("--samples", type=int, default=settings.render_samples)
    render.add_argument("--out", default="-", help="output path, - for stdout")

    oracle = subparsers.add_parser("oracle", help="check chordal relations under one transformation")
    oracle.add_argument("expr_p")
    oracle.add_argument("expr_q")
    oracle.add_argument("--transformation", choices=TRANSFORM_NAMES)
    oracle.add_argument("--budget", type=int, default=settings.oracle_budget)
    oracle.add_argument("--samples", type=int, default=settings.samples_per_region)
    oracle.add_argument("--force", action="store_true", help="check even if the tokens do not match")
    return parser


def _positive(name, value):
    if value < 1:
        raise InputError(f"--{name} must be at least 1, got {value}")
    return value


def analyze_command(args, settings):
    configuration = load_configuration(args.expr, args.transform)
    payload = configuration_to_dict(configuration, settings.report_digits)
    table = None
    if args.pretty:
        table = pd.DataFrame(
            [
                {
                    "strip": strip.index,
                    "token": token.kind,
                    "signs": "".join(s.symbol for s in token.signs),
                    "case": token.case,
                    "regions": len(configuration.regions_in(strip.index)),
                }
                for strip, token in zip(configuration.strips, configuration.tokens)
            ]
        )
    return payload, table


def _oracle_reports(p, q, verdict, args):
    transformations = sorted({w.transformation for w in verdict.witnesses.values() if w is not None})
    return [
        report_to_dict(check_correspondence(p, q, t, samples_per_region=args.samples, budget=args.budget))
        for t in transformations
    ]


def compare_command(args, settings):
    p = load_configuration(args.expr_p)
    q = load_configuration(args.expr_q)
    verdict = decide(p, q)
    payload = verdict_to_dict(verdict, settings.report_digits)
    if args.oracle:
        _positive("budget", args.budget)
        _positive("samples", args.samples)
        payload["oracle"] = _oracle_reports(p, q, verdict, args)
    table = None
    if args.pretty:
        rows = []
        for name in VERDICTS:
            witness = verdict.witnesses.get(name)
            obstruction = verdict.obstructions.get(name)
            rows.append(
                {
                    "verdict": name,
                    "holds": verdict.holds(name),
                    "witness": "" if witness is None else witness.transformation.label,
                    "sigma": "" if witness is None else witness.sigma.monotonicity.value,
                    "obstruction": "" if obstruction is None else obstruction.value,
                }
            )
        table = pd.DataFrame(rows)
    return payload, table


def render_command(args, settings):
    configuration = load_configuration(args.expr)
    _positive("samples", args.samples)
    width, height = parse_size(args.size)
    if args.viewport:
        viewport = parse_viewport(args.viewport, args.size, args.samples)
    else:
        viewport = default_viewport(configuration, width, height, args.samples)
    document = render_svg(configuration, viewport)
    if args.out == "-":
        return document, None
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_bytes(document)
    logger.info(f"💾 SVG written to {out}")
    return {"out": str(out), "bytes": len(document)}, None


def oracle_command(args, settings):
    _positive("budget", args.budget)
    _positive("samples", args.samples)
    p = load_configuration(args.expr_p)
    q = load_configuration(args.expr_q)
    if args.transformation:
        transformation = Transformation.from_label(args.transformation)
    else:
        witness = decide(p, q).witnesses.get("foliation_top")
        if witness is None:
            if not args.force:
                raise PreconditionViolated("no transformation matches the strip tokens; pass --transformation")
            transformation = Transformation.IDENTITY
        else:
            transformation = witness.transformation
    report = check_correspondence(
        p,
        q,
        transformation,
        samples_per_region=args.samples,
        budget=args.budget,
        enforce_match=not args.force,
    )
    return report_to_dict(report), None


COMMANDS = {
    "analyze": analyze_command,
    "compare": compare_command,
    "render": render_command,
    "oracle": oracle_command,
}


def _error_payload(error):
    payload = error.to_dict()
    root = getattr(error, "root", None)
    if isinstance(root, AlgReal):
        payload["root"] = algreal_to_dict(root)
    return payload


def run(argv=None, stdout=None, stderr=None):
    """Execute one command and return its exit code"""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    settings = load_settings()
    configure_logging(settings)
    parser = build_parser(settings)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_request:
        return exit_request.code if isinstance(exit_request.code, int) else 2

    try:
        payload, table = COMMANDS[args.command](args, settings)
    except LinearLikeError as error:
        if error.exit_code == 1:
            logger.error(f"❌ {error.code}: {error.message}")
        stderr.write(json.dumps(_error_payload(error), indent=2) + "\n")
        return error.exit_code
    except Exception as error:
        logger.exception(f"❌ unexpected failure in {args.command}")
        stderr.write(json.dumps({"error": "INTERNAL", "message": str(error)}, indent=2) + "\n")
        return 1

    if isinstance(payload, bytes):
        stdout.write(payload.decode("utf-8"))
    elif payload is not None:
        stdout.write(json.dumps(payload, indent=2) + "\n")
    if table is not None:
        stdout.write(table.to_string(index=False) + "\n")
    return 0


def main():
    """Main function"""
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
