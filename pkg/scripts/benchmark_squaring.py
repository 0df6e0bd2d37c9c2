#!/usr/bin/env python3
"""Timing study for exact series arithmetic: schoolbook vs multimodular NTT.

Locates the practical crossover, times the three squarings behind the
weight-12 table at increasing n, and (with --oracle) also times the
Eisenstein route used for cross-checks.
"""

import argparse
import os
import random
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from cuspsum.forms import delta_via_eisenstein, generate_delta, series_square
from cuspsum.ntt import multimod_square


def bench(fn, *args) -> float:
    t0 = time.perf_counter()
    fn(*args)
    return time.perf_counter() - t0


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-exp", type=int, default=6, help="largest n = 10^e")
    ap.add_argument("--oracle", action="store_true", help="also time the Eisenstein route")
    args = ap.parse_args()

    rng = random.Random(7)
    print("-- schoolbook vs NTT on random coefficient series --")
    for deg in (32, 64, 128, 256, 512, 1024):
        a = [rng.randint(-(10**6), 10**6) for _ in range(deg + 1)]
        ts = bench(series_square, a, deg, "schoolbook")
        tn = bench(multimod_square, a, deg)
        marker = "ntt" if tn < ts else "schoolbook"
        print(f"  deg {deg:5d}: schoolbook {ts * 1e3:8.2f} ms, ntt {tn * 1e3:8.2f} ms  -> {marker}")

    print("\n-- full table generation --")
    for e in range(4, args.max_exp + 1):
        n = 10**e
        t = bench(generate_delta, n)
        print(f"  generate n=10^{e}: {t:7.2f} s")
        if args.oracle:
            t = bench(delta_via_eisenstein, n)
            print(f"  oracle   n=10^{e}: {t:7.2f} s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
