"""Figure construction and CSV parsing for window-statistics files.

Input files are the CSV emitted by the ``cuspsum`` command-line tool:
optional ``#`` comment lines, a header row

    X,H,y,count,raw_mean_sq,normalized,smoothed,pass_flag

and one data row per grid point.  Three figure kinds are supported:

- ``window_scaling``      log-log raw window mean square against X, one
  marker per data row, with a dashed guide line of slope k - 1/2 (the
  exponent the raw statistic scales with);
- ``constant_stability``  normalized mean square against X on a
  logarithmic x axis, with the observed spread shaded as a band;
- ``exponent_fit``        log-log raw mean square against X overlaid
  with a free least-squares power-law fit, slope annotated.

Rendering never mutates its inputs, and identical inputs produce
identical figure metadata (title, axis ranges) and identical image
bytes.  Only static output is produced; a non-interactive backend is
selected at import time.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = [
    "EXPECTED_COLUMNS",
    "KINDS",
    "WEIGHTS",
    "SchemaError",
    "Row",
    "PlotJob",
    "read_rows",
    "build_figure",
    "render",
]

EXPECTED_COLUMNS = (
    "X",
    "H",
    "y",
    "count",
    "raw_mean_sq",
    "normalized",
    "smoothed",
    "pass_flag",
)

KINDS = ("window_scaling", "constant_stability", "exponent_fit")

# weights of the one-dimensional eigenform spaces the CSV producer supports
WEIGHTS = (12, 16, 18, 20, 22, 26)

_FIGSIZE = (7.0, 4.5)
_PNG_DPI = 150
_SVG_HASHSALT = "plots"


class SchemaError(ValueError):
    """Input file does not match the expected CSV schema."""

    def __init__(self, path: Path | str, missing: Sequence[str]):
        self.missing = tuple(missing)
        super().__init__(
            f"{path}: input does not match the window-statistics CSV schema; "
            f"missing columns: {', '.join(self.missing)}"
        )


@dataclass(frozen=True)
class Row:
    """One grid point of a window-statistics CSV."""

    X: float
    H: float
    y: float
    count: int
    raw_mean_sq: float
    normalized: float
    smoothed: float
    pass_flag: bool | None  # None when the column is empty


@dataclass(frozen=True)
class PlotJob:
    """One rendering request: input CSVs, figure kind, output image."""

    kind: str
    inputs: tuple[Path, ...]
    output: Path
    weight: int = 12
    title: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown plot kind {self.kind!r}: choose from {', '.join(KINDS)}")
        if not self.inputs:
            raise ValueError("at least one input CSV is required")
        if self.weight not in WEIGHTS:
            raise ValueError(
                f"unsupported weight {self.weight}: choose from {', '.join(map(str, WEIGHTS))}"
            )


def read_rows(path: Path | str) -> list[Row]:
    """Parse a window-statistics CSV, skipping comment lines.

    Raises SchemaError (listing the missing columns) when the header does
    not carry every expected column name; extra columns are tolerated.
    """
    with open(path, newline="") as fh:
        content = (line for line in fh if line.strip() and not line.startswith("#"))
        reader = csv.DictReader(content)
        fields = reader.fieldnames
        if fields is None:
            raise SchemaError(path, EXPECTED_COLUMNS)
        missing = [c for c in EXPECTED_COLUMNS if c not in fields]
        if missing:
            raise SchemaError(path, missing)
        rows = []
        for record in reader:
            flag = record["pass_flag"]
            rows.append(
                Row(
                    X=float(record["X"]),
                    H=float(record["H"]),
                    y=float(record["y"]),
                    count=int(record["count"]),
                    raw_mean_sq=float(record["raw_mean_sq"]),
                    normalized=float(record["normalized"]),
                    smoothed=float(record["smoothed"]),
                    pass_flag=None if flag in (None, "") else bool(int(flag)),
                )
            )
    return rows


def _empty_note(ax) -> None:
    ax.text(
        0.5,
        0.5,
        "no data rows",
        transform=ax.transAxes,
        ha="center",
        va="center",
        color="0.45",
    )
    # fixed limits keep empty figures byte-stable
    ax.set_xlim(1.0, 10.0)
    ax.set_ylim(1.0, 10.0)


def _scatter(ax, series, value, *, connect: bool = False):
    """One markers-only (or connected) trace per input file; returns the union."""
    xs: list[float] = []
    ys: list[float] = []
    style = "o-" if connect else "o"
    for label, rows in series:
        if not rows:
            continue
        x = [r.X for r in rows]
        v = [value(r) for r in rows]
        ax.plot(x, v, style, markersize=5, label=label)
        xs.extend(x)
        ys.extend(v)
    return np.asarray(xs, dtype=float), np.asarray(ys, dtype=float)


def _guide_segment(xs: np.ndarray) -> np.ndarray:
    gx = np.array([xs.min(), xs.max()], dtype=float)
    if gx[0] == gx[1]:  # single grid point: draw a short visible segment
        gx = gx * np.array([0.8, 1.25])
    return gx


def _fig_window_scaling(series, weight: int, title: str | None):
    slope = weight - 0.5
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    ax.set_xscale("log")
    ax.set_yscale("log")
    xs, ys = _scatter(ax, series, lambda r: r.raw_mean_sq)
    if xs.size:
        # fixed-slope guide through the data's log-space centroid
        offset = float(np.mean(np.log10(ys) - slope * np.log10(xs)))
        gx = _guide_segment(xs)
        gy = 10.0 ** (offset + slope * np.log10(gx))
        ax.plot(gx, gy, "--", color="0.35", label=f"slope k - 1/2 = {slope:g}")
        ax.legend(loc="upper left", fontsize=9)
    else:
        _empty_note(ax)
    ax.set_xlabel("X")
    ax.set_ylabel("window mean of |S(n)|$^2$")
    ax.set_title(title or f"window mean-square scaling, weight {weight}")
    return fig


def _fig_constant_stability(series, weight: int, title: str | None):
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    ax.set_xscale("log")
    xs, ys = _scatter(ax, series, lambda r: r.normalized, connect=True)
    if ys.size:
        lo, hi = float(ys.min()), float(ys.max())
        ax.axhspan(lo, hi, color="tab:blue", alpha=0.12, label=f"spread {hi / lo:.3f}x")
        ax.legend(loc="upper left", fontsize=9)
    else:
        _empty_note(ax)
    ax.set_xlabel("X")
    ax.set_ylabel("normalized window mean square")
    ax.set_title(title or f"normalized mean-square stability, weight {weight}")
    return fig


def _fig_exponent_fit(series, weight: int, title: str | None):
    fig, ax = plt.subplots(figsize=_FIGSIZE)
    ax.set_xscale("log")
    ax.set_yscale("log")
    xs, ys = _scatter(ax, series, lambda r: r.raw_mean_sq)
    if xs.size >= 2 and np.unique(xs).size >= 2:
        slope, intercept = np.polyfit(np.log10(xs), np.log10(ys), 1)
        gx = _guide_segment(xs)
        gy = 10.0 ** (intercept + slope * np.log10(gx))
        ax.plot(gx, gy, "-", color="tab:red", label=f"fit: slope = {slope:.4f}")
        ax.text(
            0.04,
            0.96,
            f"fitted slope = {slope:.4f}\nreference k - 1/2 = {weight - 0.5:g}",
            transform=ax.transAxes,
            va="top",
            fontsize=9,
            bbox={"boxstyle": "round", "facecolor": "white", "alpha": 0.8},
        )
        ax.legend(loc="lower right", fontsize=9)
    elif xs.size:
        ax.text(
            0.04,
            0.96,
            "need two distinct X values for a fit",
            transform=ax.transAxes,
            va="top",
            fontsize=9,
        )
    else:
        _empty_note(ax)
    ax.set_xlabel("X")
    ax.set_ylabel("window mean of |S(n)|$^2$")
    ax.set_title(title or f"window mean-square exponent fit, weight {weight}")
    return fig


_BUILDERS = {
    "window_scaling": _fig_window_scaling,
    "constant_stability": _fig_constant_stability,
    "exponent_fit": _fig_exponent_fit,
}


def build_figure(kind: str, series, weight: int = 12, title: str | None = None):
    """Build a figure from parsed rows.

    ``series`` is a sequence of (label, rows) pairs, one per input file.
    The caller owns the returned figure and should close it when done.
    """
    if kind not in _BUILDERS:
        raise ValueError(f"unknown plot kind {kind!r}: choose from {', '.join(KINDS)}")
    return _BUILDERS[kind](list(series), weight, title)


def _save(fig, output: Path) -> None:
    suffix = output.suffix.lower()
    if suffix == ".png":
        fig.savefig(output, dpi=_PNG_DPI, metadata={"Software": "plots"})
    elif suffix == ".svg":
        with plt.rc_context({"svg.hashsalt": _SVG_HASHSALT}):
            fig.savefig(output, metadata={"Date": None})
    else:
        raise ValueError(f"unsupported image format {suffix!r}: use .png or .svg")


def render(job: PlotJob) -> Path:
    """Read the job's CSVs, build its figure, and write the image file."""
    series = [(path.stem, read_rows(path)) for path in job.inputs]
    fig = build_figure(job.kind, series, job.weight, job.title)
    try:
        _save(fig, job.output)
    finally:
        plt.close(fig)
    return job.output
