"""Partial sums, window statistics, smoothed sums, scaling fits."""

import itertools
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cuspsum.forms import generate_delta
from cuspsum.sums import (
    SMOOTHING_CONSTANT,
    WindowRangeError,
    exponent_fit,
    log_abs_bigint,
    long_interval_mean,
    partial_sums,
    smoothed_second_moment,
    theorem_window,
    window_mean,
    window_vs_smoothed,
)

TWO_PI = 2.0 * math.pi


# --- exact integer layer ---------------------------------------------------


def test_partial_sums_match_prefix_accumulation():
    t = generate_delta(60)
    p = partial_sums(t)
    expect = [0] + list(itertools.accumulate(t.a[1:]))
    assert p.S == expect
    assert p.weight == 12 and p.N == 60


def test_partial_sums_log_column():
    t = generate_delta(60)
    p = partial_sums(t)
    for n in (1, 2, 7, 33, 60):
        s = p.S[n]
        expect = 2.0 * math.log(abs(s)) - 11.0 * math.log(n)
        assert p.logS2norm[n] == pytest.approx(expect, rel=1e-13)
    assert p.logS2norm[0] == -math.inf


def test_log_abs_bigint_small_and_signs():
    assert log_abs_bigint(0) == -math.inf
    assert log_abs_bigint(1) == 0.0
    assert log_abs_bigint(-8) == pytest.approx(math.log(8), rel=1e-15)


@given(st.integers(min_value=1, max_value=10**250))
@settings(max_examples=80, deadline=None)
def test_log_abs_bigint_vs_mpmath(x):
    with mpmath.workdps(60):
        expect = float(mpmath.log(mpmath.mpf(x)))
    assert log_abs_bigint(x) == pytest.approx(expect, rel=1e-13, abs=1e-13)


# --- windows ---------------------------------------------------------------


@pytest.fixture(scope="module")
def psums_small():
    return partial_sums(generate_delta(4000))


def test_window_exact_small_case(psums_small):
    # |n - 2| < 1.5 covers {1, 2, 3}; S = 1, -23, 229
    stat = window_mean(psums_small, 2.0, 1.5)
    assert stat.count == 3
    total = 1 + 23**2 + 229**2
    assert total == 52971
    assert stat.raw_mean_sq == pytest.approx(total / 1.5, rel=1e-13)
    assert stat.normalized == pytest.approx(total / 1.5 / 2.0**11.5, rel=1e-13)


def test_window_strict_inequality(psums_small):
    # |n - 5| < 1 keeps only n = 5
    stat = window_mean(psums_small, 5.0, 1.0)
    assert stat.count == 1
    s5 = 1 - 24 + 252 - 1472 + 4830
    assert stat.raw_mean_sq == pytest.approx(float(s5 * s5), rel=1e-13)


def test_window_empty(psums_small):
    stat = window_mean(psums_small, 2.5, 0.3)
    assert stat.count == 0
    assert stat.raw_mean_sq == 0.0 and stat.normalized == 0.0


def test_window_range_errors(psums_small):
    with pytest.raises(WindowRangeError):
        window_mean(psums_small, 1.0, 2.0)  # reaches n = 0
    with pytest.raises(WindowRangeError):
        window_mean(psums_small, 3999.0, 10.0)  # reaches past N
    with pytest.raises(ValueError):
        window_mean(psums_small, 100.0, 0.0)


def test_long_interval_mean_exact(psums_small):
    total = sum(s * s for s in psums_small.S[1:4])
    assert long_interval_mean(psums_small, 3.0) == pytest.approx(
        total / 3.0**12.5, rel=1e-13
    )
    with pytest.raises(ValueError):
        long_interval_mean(psums_small, 0.5)
    with pytest.raises(ValueError):
        long_interval_mean(psums_small, 5000.0)


def test_theorem_window_values():
    assert theorem_window(1e6) == pytest.approx(1.549e4, rel=5e-4)
    for x in (10.0, 4000.0, 1e6):
        with mpmath.workdps(40):
            expect = float(
                mpmath.mpf(x) ** (mpmath.mpf(2) / 3)
                * mpmath.log(mpmath.mpf(x)) ** (mpmath.mpf(1) / 6)
            )
        assert theorem_window(x) == pytest.approx(expect, rel=1e-12)
    with pytest.raises(ValueError):
        theorem_window(1.0)


# --- smoothed sums ---------------------------------------------------------


def test_smoothed_single_term_limit(psums_small):
    # enormous y kills every term except n = X exactly
    got = smoothed_second_moment(psums_small, 2.0, 1e6)
    assert got == pytest.approx(23**2 / 2.0**11 / TWO_PI, rel=1e-13)


def test_smoothed_lower_bound_at_one(psums_small):
    # the n = 1 term alone contributes 1/(2 pi)
    assert smoothed_second_moment(psums_small, 1.0, 1.0) >= 1.0 / TWO_PI


def test_smoothed_validation(psums_small):
    with pytest.raises(ValueError):
        smoothed_second_moment(psums_small, 0.5, 1.0)
    with pytest.raises(ValueError):
        smoothed_second_moment(psums_small, 10.0, 0.0)
    with pytest.raises(ValueError):
        smoothed_second_moment(psums_small, 10.0, 1.0, t_cut=0.0)


def test_majorant_constant_value():
    assert SMOOTHING_CONSTANT == pytest.approx(TWO_PI * math.exp(1 / math.pi), rel=1e-15)


def test_window_vs_smoothed_requires_y(psums_small):
    with pytest.raises(ValueError):
        window_vs_smoothed(psums_small, 100.0, 1.5)


@given(
    x=st.floats(min_value=1.0, max_value=2500.0, allow_nan=False),
    y=st.floats(min_value=2.0, max_value=50.0, allow_nan=False),
)
@settings(max_examples=60, deadline=None)
def test_window_always_below_smoothed_majorant(psums_small, x, y):
    cmp = window_vs_smoothed(psums_small, x, y)
    assert cmp.passed
    assert cmp.lhs <= cmp.rhs
    assert cmp.ratio <= 1.0


# --- scaling fits ----------------------------------------------------------


def test_exponent_fit_validation(psums_small):
    with pytest.raises(ValueError):
        exponent_fit(psums_small, [100.0, 200.0], 2 / 3)
    with pytest.raises(ValueError):
        exponent_fit(psums_small, [100.0, 200.0, 400.0], 1.2)
    with pytest.raises(ValueError):
        exponent_fit(psums_small, [100.0, 200.0, 400.0], 0.0)


def test_exponent_fit_order_invariant(psums_small):
    grid = [500.0, 1000.0, 2000.0, 3000.0]
    a = exponent_fit(psums_small, grid, 2 / 3)
    b = exponent_fit(psums_small, list(reversed(grid)), 2 / 3)
    assert a.slope == b.slope and a.points == b.points
    assert a.predicted_envelope == pytest.approx(12 + 1.5 - 2.0, rel=1e-15)
    assert math.isfinite(a.slope) and a.residual_rms >= 0.0
    # normalized slope differs from the raw one by exactly k - 1/2
    assert a.slope - a.slope_normalized == pytest.approx(11.5, abs=1e-9)


def test_exponent_fit_matches_direct_regression(psums_small):
    grid = [400.0, 800.0, 1600.0]
    fit = exponent_fit(psums_small, grid, 0.5)
    logx = [math.log(g) for g in grid]
    lograw = [
        math.log(window_mean(psums_small, g, g**0.5).raw_mean_sq) for g in grid
    ]
    expect = float(np.polyfit(logx, lograw, 1)[0])
    assert fit.slope == pytest.approx(expect, rel=1e-12)
