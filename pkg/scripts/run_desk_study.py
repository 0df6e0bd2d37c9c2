#!/usr/bin/env python3
"""Desk-scale study of partial-sum mean squares for the weight-12 form.

Generates (or loads) the coefficient table, then walks through the
statistics the package exists for:

  1. long-interval mean-square constant estimates on a decade grid,
  2. normalized short-window means with the X^(2/3) (log X)^(1/6)
     window, reported as a band,
  3. a least-squares exponent fit at delta = 2/3,
  4. the window-vs-smoothed majorant inequality on an (X, y) grid.

Writes a window-statistics CSV next to the other outputs so the plots
package has something real to chew on.
"""

import argparse
import math
import os
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from cuspsum.cache import default_cache_path, read_table, write_table
from cuspsum.cli import main as cli_main
from cuspsum.forms import generate_delta
from cuspsum.sums import (
    exponent_fit,
    long_interval_mean,
    partial_sums,
    theorem_window,
    window_mean,
    window_vs_smoothed,
)


def load_table(n: int):
    path = default_cache_path(12, n)
    if os.path.isfile(path):
        try:
            return read_table(path)
        except ValueError:
            pass
    t0 = time.time()
    table = generate_delta(n)
    write_table(path, table)
    print(f"generated weight-12 table to n={n} in {time.time() - t0:.1f} s")
    return table


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument(
        "--n",
        type=int,
        default=1_016_000,
        help="table length (default covers X = 10^6 plus its window)",
    )
    ap.add_argument("--out-dir", default="desk_out", help="output directory")
    args = ap.parse_args()

    os.makedirs(args.out_dir, exist_ok=True)
    table = load_table(args.n)
    psums = partial_sums(table)
    print(f"table: weight {table.weight}, n <= {table.N}")

    print("\n-- long-interval constant estimates --")
    decades = [10**e for e in (4, 5, 6) if 10**e <= table.N]
    ests = [long_interval_mean(psums, x) for x in decades]
    for x, c in zip(decades, ests):
        print(f"  X = 10^{round(math.log10(x))}:  C ~ {c:.6f}")
    for a, b in zip(ests, ests[1:]):
        print(f"  successive |diff| = {abs(b - a):.3e}")

    print("\n-- theorem-window normalized means --")
    grid = [
        x
        for x in (10**4, 3 * 10**4, 10**5, 3 * 10**5, 10**6)
        if x + theorem_window(x) <= table.N  # window must stay tabulated
    ]
    vals = []
    for x in grid:
        h = theorem_window(x)
        stat = window_mean(psums, x, h)
        vals.append(stat.normalized)
        print(
            f"  X = {x:>9}: H = {h:12.1f}, count = {stat.count:7d}, "
            f"normalized = {stat.normalized:.6f}"
        )
    band = max(vals) / min(vals)
    print(f"  band ratio max/min = {band:.3f}")

    print("\n-- exponent fit at delta = 2/3 --")
    if len(grid) >= 3:
        fit = exponent_fit(psums, [float(x) for x in grid], 2.0 / 3.0)
        print(f"  slope          = {fit.slope:.4f}  (mean-square scale {table.weight - 0.5})")
        print(f"  normalized fit = {fit.slope_normalized:+.4f}  (flat is 0)")
        print(f"  residual rms   = {fit.residual_rms:.4f}")
    else:
        print(f"  skipped: only {len(grid)} usable grid points, need 3")

    print("\n-- window vs smoothed majorant --")
    xs = [x for x in (10**4, 10**5, 5 * 10**5, 10**6) if 1.5 * x <= table.N]
    for x in xs:
        for y in (2.0, 20.0, 200.0):
            cmp = window_vs_smoothed(psums, x, y)
            print(
                f"  X = {x:>9}, y = {y:5.0f}: lhs/rhs = {cmp.ratio:.4f} "
                f"{'ok' if cmp.passed else 'VIOLATION'}"
            )

    csv_path = os.path.join(args.out_dir, f"windows_theorem_n{table.N}.csv")
    rc = cli_main(
        [
            "windows",
            "--weight", "12",
            "--n", str(table.N),
            "--grid", ",".join(str(x) for x in grid),
            "--mode", "theorem",
            "--out", csv_path,
        ]
    )
    print(f"\nwindow CSV -> {csv_path} (exit {rc})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
