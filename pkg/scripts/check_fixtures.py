#!/usr/bin/env python3
"""
Smoke check: every pair in data/fixture_pairs.json gets its recorded verdicts
Run from the repository root: python scripts/check_fixtures.py [--oracle]
"""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from src.algebra.expr import parse_map  # noqa: E402
from src.foliation.configuration import build_configuration  # noqa: E402
from src.foliation.equivalence import VERDICTS, decide  # noqa: E402
from src.foliation.oracle import check_correspondence  # noqa: E402
from src.utils.errors import LinearLikeError  # noqa: E402

FIXTURES = Path(__file__).resolve().parent.parent / "data" / "fixture_pairs.json"


def check_pair(pair, with_oracle=False):
    try:
        p = build_configuration(parse_map(pair["p"]))
        q = build_configuration(parse_map(pair["q"]))
        verdict = decide(p, q)
    except LinearLikeError as e:
        print(f"❌ {pair['name']}: {e.code} {e}")
        return False

    ok = True
    for name in VERDICTS:
        got, wanted = verdict.holds(name), pair["expected"][name]
        if got != wanted:
            print(f"❌ {pair['name']}: {name} is {got}, expected {wanted}")
            ok = False
    if not with_oracle:
        if ok:
            print(f"✅ {pair['name']}")
        return ok

    transformations = {w.transformation for w in verdict.witnesses.values() if w is not None}
    for transformation in sorted(transformations):
        report = check_correspondence(p, q, transformation)
        if report.violations:
            print(f"❌ {pair['name']}: {len(report.violations)} oracle violations under {transformation.label}")
            ok = False
        else:
            print(f"📊 {pair['name']}: {report.checked} triples agree under {transformation.label}")
    if ok:
        print(f"✅ {pair['name']}")
    return ok


if __name__ == "__main__":
    print("🧪 Checking fixture pairs...")
    pairs = json.loads(FIXTURES.read_text(encoding="utf-8"))["pairs"]
    results = [check_pair(pair, with_oracle="--oracle" in sys.argv) for pair in pairs]

    if all(results):
        print(f"\n🎉 All {len(results)} fixture pairs match.")
    else:
        print(f"\n💥 {results.count(False)} of {len(results)} fixture pairs failed.")
        sys.exit(1)
