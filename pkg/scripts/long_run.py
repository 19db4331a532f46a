"""Long runs at the largest stages: SG_2 bounds up to m = 15, fits for d = 3, 4.

    python3 scripts/long_run.py --sg2 15 --sg3 10 --sg4 6

The digit count of f grows like (d+1)^m, so f_2(15) has about 12 million
digits. GMP multiplication keeps the default targets to seconds.
"""

import argparse
import time

from sgcount.bounds import compute_bounds
from sgcount.config import Config
from sgcount.derivation import load_or_derive
from sgcount.fit import extrapolate_z
from sgcount.sequences import initial_vector, iterate


def _stages(d, n, cache):
    t0 = time.perf_counter()
    vs = iterate(load_or_derive(d, 2, cache_dir=cache), initial_vector(d), n)
    print(f"d={d}: {n} stages in {time.perf_counter() - t0:.1f}s, "
          f"f({n}) has {len(str(vs[-1].f)):,} digits")
    return vs


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cache-dir", default=str(Config().cache_dir))
    ap.add_argument("--sg2", type=int, default=15)
    ap.add_argument("--sg3", type=int, default=10)
    ap.add_argument("--sg4", type=int, default=6)
    ap.add_argument("--precision", type=int, default=30)
    args = ap.parse_args()

    vs = _stages(2, args.sg2, args.cache_dir)
    for method in ("lemma6", "improved"):
        r = compute_bounds(method, args.sg2, vs, args.precision)
        row = r.as_row(args.precision)
        print(f"  {method:<8} m={args.sg2}: [{row['lower']}, {row['upper']}] width {row['width']}")
    print(f"  fit z_2 = {extrapolate_z(2, vs, args.precision).z:.15f}")

    for d, n in ((3, args.sg3), (4, args.sg4)):
        vs = _stages(d, n, args.cache_dir)
        rep = extrapolate_z(d, vs, args.precision)
        print(f"  fit z_{d} = {float(rep.z):.8f} from stages {rep.stages}")


if __name__ == "__main__":
    main()
