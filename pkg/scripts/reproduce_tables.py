"""Print the count and ratio tables for every supported family.

    python3 scripts/reproduce_tables.py [--cache-dir DIR]

Systems are derived (or read from the cache), iterated from the stage-0
counts, and printed with exact integers. Ratios use 15 significant digits.
"""

import argparse
import time

from sgcount.config import Config
from sgcount.derivation import load_or_derive
from sgcount.fixtures import fixture_for_family, verify_fixture
from sgcount.sequences import initial_vector, iterate, ratios

FAMILIES = [(2, 2, 3), (2, 3, 2), (2, 4, 2), (3, 2, 2), (4, 2, 2)]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cache-dir", default=str(Config().cache_dir))
    args = ap.parse_args()

    for d, b, stages in FAMILIES:
        t0 = time.perf_counter()
        system = load_or_derive(d, b, cache_dir=args.cache_dir)
        took = time.perf_counter() - t0
        fixture = fixture_for_family(d, b)
        status = "no fixture"
        if fixture:
            bad = verify_fixture(system, fixture)
            status = "matches fixture" if not bad else f"{len(bad)} monomials differ from fixture"
        print(f"\nSG_{{{d},{b}}}: {len(system.variables)} classes, "
              f"degree {system.degree()}, {status} ({took:.1f}s)")
        for v in iterate(system, initial_vector(d), stages):
            print(f"  n={v.stage}")
            for name, value in v.named().items():
                print(f"    {name:>2} {int(value):,}")
        if d == 2:
            print("  n  alpha              beta")
            for m, a, bb in ratios(iterate(system, initial_vector(2), 4)).rendered(15):
                print(f"  {m}  {a:<18} {bb}")


if __name__ == "__main__":
    main()
