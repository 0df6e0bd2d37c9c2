"""Partial sums of eigenform coefficients and their mean-square statistics.

The partial sums S(n) = a(1) + ... + a(n) are kept as exact integers.
Floating point enters only in the derived statistics, which work in the
log domain throughout: log |S(n)|^2 - (k-1) log n is precomputed once
per table, so window averages, smoothed sums and scaling fits never
overflow a double even at weight 26.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .forms import EigenformTable

__all__ = [
    "WindowRangeError",
    "PartialSumTable",
    "WindowStat",
    "SmoothedComparison",
    "ExponentFit",
    "log_abs_bigint",
    "partial_sums",
    "long_interval_mean",
    "theorem_window",
    "window_mean",
    "smoothed_second_moment",
    "window_vs_smoothed",
    "exponent_fit",
]

TWO_PI = 2.0 * math.pi

# window terms obey y^2 log^2(X/n) <= 4/pi for y >= 2, so the Gaussian
# weight is at least exp(-1/pi) and 2 pi e^(1/pi) dominates the ratio
SMOOTHING_CONSTANT = TWO_PI * math.exp(1.0 / math.pi)

_LOG2 = math.log(2.0)


class WindowRangeError(ValueError):
    """Requested window contains integers outside the tabulated range."""


def log_abs_bigint(x: int) -> float:
    """Natural log of |x| for arbitrary-size ints; -inf for x = 0.

    Large ints are reduced to their top 53 bits plus an exact power of
    two, so the result is correct to a couple of ulps regardless of size.
    """
    if x == 0:
        return float("-inf")
    if x < 0:
        x = -x
    nbits = x.bit_length()
    if nbits <= 53:
        return math.log(x)
    return math.log(x >> (nbits - 53)) + (nbits - 53) * _LOG2


def _log_ratio(num: int, log_den: float) -> float:
    """num / exp(log_den) as a float, safe for huge numerators."""
    if num == 0:
        return 0.0
    mag = math.exp(log_abs_bigint(num) - log_den)
    return mag if num > 0 else -mag


@dataclass
class PartialSumTable:
    """Exact S(1..N) with the normalized log magnitudes alongside."""

    weight: int
    N: int
    S: list[int]
    logS2norm: np.ndarray  # index n: 2 log|S(n)| - (k-1) log n; -inf if S(n)=0

    def __repr__(self) -> str:  # the integer column can be huge
        return f"PartialSumTable(weight={self.weight}, N={self.N})"


def partial_sums(table: EigenformTable) -> PartialSumTable:
    n = table.N
    sums = [0] * (n + 1)
    acc = 0
    for i in range(1, n + 1):
        acc += table.a[i]
        sums[i] = acc
    logs = np.empty(n + 1)
    logs[0] = -np.inf
    km1 = table.weight - 1
    logn = np.log(np.arange(1, n + 1, dtype=np.float64))
    for i in range(1, n + 1):
        logs[i] = 2.0 * log_abs_bigint(sums[i])
    logs[1:] -= km1 * logn
    return PartialSumTable(weight=table.weight, N=n, S=sums, logS2norm=logs)


def long_interval_mean(p: PartialSumTable, x: float) -> float:
    """(1/X) sum_{n<=X} |S(n)|^2, normalized by X^(k - 1 + 1/2)."""
    if x < 1:
        raise ValueError("X must be >= 1")
    top = int(math.floor(x))
    if top > p.N:
        raise ValueError("X exceeds table range")
    total = 0
    for s in p.S[1 : top + 1]:
        total += s * s
    return _log_ratio(total, (p.weight + 0.5) * math.log(x))


def theorem_window(x: float) -> float:
    """Critical window half-length X^(2/3) (log X)^(1/6)."""
    if x <= 1:
        raise ValueError("X must be > 1")
    return x ** (2.0 / 3.0) * math.log(x) ** (1.0 / 6.0)


def _window_bounds(x: float, h: float) -> tuple[int, int]:
    """Integer endpoints of the open interval |n - X| < H."""
    lo = math.floor(x - h) + 1
    hi = math.ceil(x + h) - 1
    return lo, hi


@dataclass
class WindowStat:
    X: float
    H: float
    count: int
    raw_mean_sq: float  # (1/H) sum of |S(n)|^2 over the window
    normalized: float   # raw divided by X^(k - 1 + 1/2)


def window_mean(p: PartialSumTable, x: float, h: float) -> WindowStat:
    """Mean square of S over the integers strictly within distance H of X."""
    if h <= 0:
        raise ValueError("window half-length must be positive")
    lo, hi = _window_bounds(x, h)
    if lo <= hi and (lo < 1 or hi > p.N):
        raise WindowRangeError(
            f"window [{lo}, {hi}] leaves the tabulated range [1, {p.N}]"
        )
    total = 0
    for s in p.S[lo : hi + 1]:
        total += s * s
    raw = _log_ratio(total, math.log(h))
    norm = _log_ratio(total, math.log(h) + (p.weight - 0.5) * math.log(x))
    return WindowStat(X=x, H=h, count=max(0, hi - lo + 1), raw_mean_sq=raw, normalized=norm)


def smoothed_second_moment(
    p: PartialSumTable, x: float, y: float, t_cut: float = 60.0
) -> float:
    """(1/2pi) sum_n (|S(n)|^2 / n^(k-1)) exp(-y^2 log^2(X/n) / 4pi).

    Terms with y^2 log^2(X/n) > 4 pi t_cut are dropped; the table is
    assumed to cover the surviving range (terms beyond N are absent).
    """
    if x < 1:
        raise ValueError("X must be >= 1")
    if y <= 0:
        raise ValueError("y must be positive")
    if t_cut <= 0:
        raise ValueError("t_cut must be positive")
    reach = math.sqrt(4.0 * math.pi * t_cut) / y  # |log(X/n)| beyond this is cut
    lo = max(1, math.ceil(x * math.exp(-reach)))
    hi = min(p.N, math.floor(x * math.exp(reach)))
    if lo > hi:
        return 0.0
    logn = np.log(np.arange(lo, hi + 1, dtype=np.float64))
    damp = (y * (math.log(x) - logn)) ** 2 / (4.0 * math.pi)
    keep = damp <= t_cut
    terms = np.exp(p.logS2norm[lo : hi + 1][keep] - damp[keep])
    return float(terms.sum()) / TWO_PI


@dataclass
class SmoothedComparison:
    X: float
    y: float
    lhs: float          # window sum of |S(n)|^2 / n^(k-1), |n - X| < X/y
    rhs: float          # 2 pi e^(1/pi) * smoothed second moment
    ratio: float
    passed: bool


def window_vs_smoothed(p: PartialSumTable, x: float, y: float) -> SmoothedComparison:
    """Check the window sum against its smoothed majorant.

    For y >= 2 every window term has |log(X/n)| <= 2/y, hence Gaussian
    weight >= exp(-1/pi), which yields the 2 pi e^(1/pi) constant.
    """
    if y < 2:
        raise ValueError("the majorant constant requires y >= 2")
    if x < 1:
        raise ValueError("X must be >= 1")
    lo, hi = _window_bounds(x, x / y)
    if lo <= hi and (lo < 1 or hi > p.N):
        raise WindowRangeError(
            f"window [{lo}, {hi}] leaves the tabulated range [1, {p.N}]"
        )
    lhs = float(np.exp(p.logS2norm[lo : hi + 1]).sum()) if lo <= hi else 0.0
    rhs = SMOOTHING_CONSTANT * smoothed_second_moment(p, x, y)
    ratio = lhs / rhs if rhs > 0 else math.inf if lhs > 0 else 0.0
    return SmoothedComparison(X=x, y=y, lhs=lhs, rhs=rhs, ratio=ratio, passed=lhs <= rhs)


@dataclass
class ExponentFit:
    delta: float
    slope: float             # d log(raw window mean) / d log X
    slope_normalized: float  # same after dividing by X^(k - 1/2)
    predicted_envelope: float
    residual_rms: float
    points: list[tuple[float, float]]  # (log X, log raw_mean_sq)


def exponent_fit(
    p: PartialSumTable, grid: list[float], delta: float
) -> ExponentFit:
    """Least-squares slope of log window mean square vs log X, H = X^delta.

    The grid is sorted internally, so input order cannot change the fit.
    The reference envelope exponent is k + 3/2 - 3 delta, which meets the
    mean-square scale k - 1/2 exactly at delta = 2/3.
    """
    if len(grid) < 3:
        raise ValueError("need at least 3 grid points for a slope")
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    xs = sorted(float(g) for g in grid)
    logx = []
    lograw = []
    lognorm = []
    for x in xs:
        stat = window_mean(p, x, x**delta)
        if stat.raw_mean_sq <= 0:
            raise ValueError(f"window at X={x} has vanishing mean square")
        logx.append(math.log(x))
        lograw.append(math.log(stat.raw_mean_sq))
        lognorm.append(math.log(stat.normalized))
    coeffs, residuals, *_ = np.polyfit(logx, lograw, 1, full=True)
    coeffs_n = np.polyfit(logx, lognorm, 1)
    rms = math.sqrt(float(residuals[0]) / len(xs)) if len(residuals) else 0.0
    return ExponentFit(
        delta=delta,
        slope=float(coeffs[0]),
        slope_normalized=float(coeffs_n[0]),
        predicted_envelope=p.weight + 1.5 - 3.0 * delta,
        residual_rms=rms,
        points=list(zip(logx, lograw)),
    )
