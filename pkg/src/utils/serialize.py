"""
JSON-ready dictionaries for configurations, verdicts and oracle reports.
"""

from src.algebra.expr import format_map
from src.algebra.polynomial import UniPoly
from src.algebra.realalg import Exact, to_float
from src.foliation.configuration import fiber_component_count, separatrices
from src.foliation.equivalence import VERDICTS


def algreal_to_dict(value, digits=12):
    if isinstance(value, Exact):
        defining = UniPoly([-value.value, 1]).primitive()
        interval = [str(value.value), str(value.value)]
        payload = {"value": str(value.value)}
    else:
        defining = value.defining
        interval = [str(value.lo), str(value.hi)]
        payload = {}
    payload.update(
        {
            "defining": [str(c) for c in defining.coeffs],
            "interval": interval,
            "approx": to_float(value, digits),
        }
    )
    return payload


def _bound(value, infinity, digits):
    return infinity if value is None else algreal_to_dict(value, digits)


def token_to_dict(token):
    return {"kind": token.kind, "signs": [s.symbol for s in token.signs], "case": token.case}


def configuration_to_dict(configuration, digits=12):
    return {
        "map": format_map(configuration.map),
        "submersion": "ok",
        "k": configuration.k,
        "roots": [algreal_to_dict(root, digits) for root in configuration.roots],
        "multiplicities": list(configuration.multiplicities),
        "boundary_values": [algreal_to_dict(value, digits) for value in configuration.boundary_values],
        "rprime_signs": [sign.symbol for sign in configuration.rprime_signs],
        "bifurcation": [algreal_to_dict(value, digits) for value in configuration.bifurcation],
        "tokens": [token_to_dict(token) for token in configuration.tokens],
        "regions": [
            {
                "strip": region.strip,
                "interval": [_bound(region.lower, "-inf", digits), _bound(region.upper, "+inf", digits)],
                "boundary": sorted(s.label for s in region.boundary),
            }
            for region in configuration.regions
        ],
        "separatrices": [
            {"id": sep_id.label, "level": algreal_to_dict(level, digits)}
            for sep_id, level in separatrices(configuration)
        ],
        "fiber_counts": {
            "generic": configuration.k + 1,
            "at_bifurcation": [
                {"level": algreal_to_dict(value, digits), "components": fiber_component_count(configuration, value)}
                for value in configuration.bifurcation
            ],
        },
    }


def sigma_to_dict(sigma, digits=12):
    return {
        "monotonicity": sigma.monotonicity.value,
        "pairs": [[algreal_to_dict(a, digits), algreal_to_dict(b, digits)] for a, b in sigma.pairs],
    }


def witness_to_dict(witness, digits=12):
    if witness is None:
        return None
    return {"transformation": witness.transformation.label, "sigma": sigma_to_dict(witness.sigma, digits)}


def verdict_to_dict(verdict, digits=12):
    payload = {name: verdict.holds(name) for name in VERDICTS}
    first = next((verdict.witnesses[name] for name in reversed(VERDICTS) if verdict.witnesses.get(name)), None)
    payload.update(
        {
            "matches": [t.label for t in verdict.matches],
            "witness": witness_to_dict(first, digits),
            "witnesses": {name: witness_to_dict(verdict.witnesses.get(name), digits) for name in VERDICTS},
            "obstructions": {
                name: None if verdict.obstructions.get(name) is None else verdict.obstructions[name].name
                for name in VERDICTS
            },
        }
    )
    return payload


def report_to_dict(report):
    return {
        "transformation": report.transformation.label,
        "checked": report.checked,
        "violations": report.violations,
        "inconclusive": report.inconclusive,
        "unmatched": report.unmatched,
    }
