"""Command-line entry point: render one figure from window-statistics CSVs.

Usage::

    plot <kind> --in stats.csv [--in more.csv] --out figure.png [--k 12]

Exit codes: 0 success (including a labeled empty figure for a CSV with
no data rows), 2 bad arguments or schema-invalid input, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from plots import __version__
from plots.figures import KINDS, PlotJob, render


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="plot",
        description="Render window-statistics CSV files into a static scaling figure.",
    )
    parser.add_argument("kind", choices=KINDS, help="figure kind")
    parser.add_argument(
        "--in",
        dest="inputs",
        action="append",
        required=True,
        metavar="CSV",
        help="input CSV path (repeatable)",
    )
    parser.add_argument(
        "--out", required=True, metavar="IMG", help="output image path (.png or .svg)"
    )
    parser.add_argument(
        "--k", type=int, default=12, help="eigenform weight for reference slopes (default 12)"
    )
    parser.add_argument("--version", action="version", version=f"plot {__version__}")
    args = parser.parse_args(argv)

    try:
        job = PlotJob(
            kind=args.kind,
            inputs=tuple(Path(p) for p in args.inputs),
            output=Path(args.out),
            weight=args.k,
        )
        out = render(job)
    except ValueError as exc:  # includes SchemaError and bad job parameters
        print(f"plot: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"plot: {exc}", file=sys.stderr)
        return 3
    print(out)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
