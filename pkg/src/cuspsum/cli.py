"""Command-line front door: table generation, window experiments, checks.

Subcommands
-----------
gen       generate a coefficient table and persist it to the cache
windows   window statistics over an X grid, emitted as CSV
verify    run a named check suite, emitted as a JSON report

Exit codes are a stable contract: 0 success / all checks pass, 1 check
failure, 2 usage or configuration error, 3 I/O failure.

Configuration may come from an INI-style file (section ``[cuspsum]``, or
a flat key=value file); command-line flags win over file values.
"""

from __future__ import annotations

import argparse
import configparser
import hashlib
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import __version__
from .cache import CacheFormatError, default_cache_path, read_table, write_table
from .forms import SUPPORTED_WEIGHTS, EigenformTable, eigenform, hecke_report
from .mellin import (
    KernelParams,
    decomposition_check,
    derivative_transform_check,
    kernel_closed_form,
    kernel_line_integral,
)
from .sums import (
    partial_sums,
    smoothed_second_moment,
    theorem_window,
    window_mean,
    window_vs_smoothed,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3

CSV_COLUMNS = "X,H,y,count,raw_mean_sq,normalized,smoothed,pass_flag"

WINDOW_MODES = ("theorem", "fixed_delta", "fixed_y")
VERIFY_SUITES = ("kernel", "transform", "decomposition", "hecke")


class ConfigError(ValueError):
    """Bad flag or config-file value (exit code 2)."""


@dataclass
class ExperimentConfig:
    """Resolved parameters for a window experiment run."""

    weight: int = 12
    n: int = 100_000
    x_grid: tuple[float, ...] = ()
    window_mode: str = "theorem"
    delta: float | None = None
    y: float | None = None
    cache: str | None = None
    out: str | None = None
    tolerance: float | None = None
    threads: int = 1

    def validate(self) -> "ExperimentConfig":
        if self.weight not in SUPPORTED_WEIGHTS:
            raise ConfigError(
                f"weight {self.weight} is not supported; "
                f"choose one of {sorted(SUPPORTED_WEIGHTS)}"
            )
        if self.n < 1:
            raise ConfigError("n must be at least 1")
        if self.window_mode not in WINDOW_MODES:
            raise ConfigError(
                f"window mode {self.window_mode!r} not in {WINDOW_MODES}"
            )
        if self.window_mode == "fixed_delta":
            if self.delta is None:
                raise ConfigError("fixed_delta mode requires --delta")
            if not 0.5 < self.delta <= 2.0 / 3.0 + 1e-12:
                raise ConfigError("delta must lie in (1/2, 2/3]")
        if self.window_mode == "fixed_y":
            if self.y is None:
                raise ConfigError("fixed_y mode requires --y")
            if self.y <= 1.0:
                raise ConfigError("fixed_y mode requires y > 1")
        if self.threads < 1:
            raise ConfigError("threads must be at least 1")
        if any(x <= 1.0 for x in self.x_grid):
            raise ConfigError("grid points must exceed 1")
        self.x_grid = tuple(sorted(float(x) for x in self.x_grid))
        return self

    def content_hash(self) -> str:
        """Short hash of the statistic-determining parameters.

        Execution details (threads, output path, cache location) are
        excluded: they cannot change a row.
        """
        payload = {
            "weight": self.weight,
            "n": self.n,
            "x_grid": list(self.x_grid),
            "window_mode": self.window_mode,
            "delta": self.delta,
            "y": self.y,
            "tolerance": self.tolerance,
        }
        blob = json.dumps(payload, sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:12]


def parse_grid(text: str) -> tuple[float, ...]:
    """Parse "a,b,c" or "logspace:lo,hi,count" (decade exponents)."""
    text = text.strip()
    if not text:
        return ()
    if text.startswith("logspace:"):
        parts = text[len("logspace:"):].split(",")
        if len(parts) != 3:
            raise ConfigError('logspace grid must be "logspace:lo,hi,count"')
        try:
            lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError as exc:
            raise ConfigError(f"bad logspace grid {text!r}: {exc}") from None
        if count < 0:
            raise ConfigError("logspace count must be nonnegative")
        return tuple(float(v) for v in np.logspace(lo, hi, count))
    try:
        return tuple(float(tok) for tok in text.split(",") if tok.strip())
    except ValueError as exc:
        raise ConfigError(f"bad grid {text!r}: {exc}") from None


def _read_config_file(path: str) -> dict[str, str]:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if not text.lstrip().startswith("["):  # allow flat key=value files
        text = "[cuspsum]\n" + text
    parser = configparser.ConfigParser()
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse config file {path}: {exc}") from None
    if parser.has_section("cuspsum"):
        return dict(parser.items("cuspsum"))
    return {}


def _pick(flag_value, file_values: dict[str, str], key: str, conv, default):
    """Flag beats file beats default; file strings go through conv."""
    if flag_value is not None:
        return flag_value
    if key in file_values:
        try:
            return conv(file_values[key])
        except (ValueError, ConfigError) as exc:
            raise ConfigError(f"bad config value for {key!r}: {exc}") from None
    return default


def _experiment_config(args: argparse.Namespace) -> ExperimentConfig:
    fv = _read_config_file(args.config) if args.config else {}
    grid_text = _pick(getattr(args, "grid", None), fv, "grid", str, "")
    return ExperimentConfig(
        weight=_pick(args.weight, fv, "weight", int, 12),
        n=_pick(args.n, fv, "n", int, 100_000),
        x_grid=parse_grid(grid_text),
        window_mode=_pick(getattr(args, "mode", None), fv, "mode", str, "theorem"),
        delta=_pick(getattr(args, "delta", None), fv, "delta", float, None),
        y=_pick(getattr(args, "y", None), fv, "y", float, None),
        cache=_pick(getattr(args, "cache", None), fv, "cache", str, None),
        out=_pick(getattr(args, "out", None), fv, "out", str, None),
        tolerance=_pick(getattr(args, "tolerance", None), fv, "tolerance", float, None),
        threads=_pick(getattr(args, "threads", None), fv, "threads", int, 1),
    )


def _load_or_build_table(weight: int, n: int, cache: str | None) -> EigenformTable:
    """Reuse a checksum-valid cache file covering 1..n, else generate."""
    path = cache or default_cache_path(weight, n)
    if os.path.isfile(path):
        try:
            table = read_table(path)
        except CacheFormatError:
            table = None
        if table is not None and table.weight == weight and table.N >= n:
            return table
    table = eigenform(weight, n)
    write_table(path, table)
    return table


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


# ---------------------------------------------------------------- gen


def cmd_gen(args: argparse.Namespace) -> int:
    cfg = _experiment_config(args)
    if cfg.weight not in SUPPORTED_WEIGHTS:
        raise ConfigError(
            f"weight {cfg.weight} is not supported; "
            f"choose one of {sorted(SUPPORTED_WEIGHTS)}"
        )
    if cfg.n < 1:
        raise ConfigError("n must be at least 1")
    path = cfg.cache or default_cache_path(cfg.weight, cfg.n)
    if os.path.isfile(path):
        try:
            existing = read_table(path)
        except CacheFormatError:
            existing = None  # corrupt file: regenerate below
        if (
            existing is not None
            and existing.weight == cfg.weight
            and existing.N == cfg.n
        ):
            print(f"cache hit: {path}")
            return EXIT_OK
    table = eigenform(cfg.weight, cfg.n)
    write_table(path, table)
    print(f"wrote {path}: weight {cfg.weight}, coefficients 1..{cfg.n}")
    return EXIT_OK


# ------------------------------------------------------------- windows


def _window_geometry(cfg: ExperimentConfig, x: float) -> tuple[float, float]:
    """Half-length H and concentration y for one grid point.

    All three modes keep y * H = X, so the window |n - X| < H is exactly
    the comparison window |n - X| < X/y of the smoothed-majorant check.
    """
    if cfg.window_mode == "theorem":
        h = theorem_window(x)
        return h, x / h
    if cfg.window_mode == "fixed_delta":
        h = x ** float(cfg.delta)
        return h, x / h
    y = float(cfg.y)
    return x / y, y


def cmd_windows(args: argparse.Namespace) -> int:
    cfg = _experiment_config(args).validate()
    lines = [
        f"# cuspsum {__version__} weight={cfg.weight} N={cfg.n} "
        f"config={cfg.content_hash()}",
        CSV_COLUMNS,
    ]
    if cfg.x_grid:
        table = _load_or_build_table(cfg.weight, cfg.n, cfg.cache)
        psums = partial_sums(table)

        def one_row(x: float) -> str:
            h, y = _window_geometry(cfg, x)
            stat = window_mean(psums, x, h)
            smoothed = smoothed_second_moment(psums, x, y)
            if y >= 2.0:
                flag = "1" if window_vs_smoothed(psums, x, y).passed else "0"
            else:
                flag = ""  # majorant constant not claimable below y = 2
            return ",".join(
                (
                    _fmt(x),
                    _fmt(h),
                    _fmt(y),
                    str(stat.count),
                    _fmt(stat.raw_mean_sq),
                    _fmt(stat.normalized),
                    _fmt(smoothed),
                    flag,
                )
            )

        if cfg.threads > 1:
            with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
                lines.extend(pool.map(one_row, cfg.x_grid))
        else:
            lines.extend(one_row(x) for x in cfg.x_grid)
    text = "\n".join(lines) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        print(f"wrote {cfg.out}: {len(cfg.x_grid)} rows")
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -------------------------------------------------------------- verify


def _kernel_suite(tol: float) -> list[dict]:
    checks = []
    for x in (2.0, 10.0, 100.0):
        for y in (1.0, 5.0, 20.0):
            p = KernelParams(X=x, y=y)
            quad = kernel_line_integral(p)
            closed = kernel_closed_form(p)
            rel = abs(quad - closed) / abs(closed)
            checks.append(
                {
                    "check": "kernel",
                    "params": {"X": x, "y": y, "tolerance": tol},
                    "lhs": quad,
                    "rhs": closed,
                    "rel_gap": rel,
                    "certified_error": None,
                    "pass": rel <= tol,
                }
            )
    return checks


def _transform_suite(tol: float) -> list[dict]:
    cases = (
        (0, 0, math.e, 2.0),
        (1, 0, math.e, 2.0),
        (1, 1, math.e, 2.0),
        (2, 1, 10.0, 3.0),
    )
    checks = []
    for m, l, x, y in cases:
        res = derivative_transform_check(m, l, KernelParams(X=x, y=y), tol=tol)
        checks.append(
            {
                "check": "transform",
                "params": {"m": m, "l": l, "X": x, "y": y, "tolerance": tol},
                "lhs": res.lhs,
                "rhs": res.rhs,
                "rel_gap": res.rel_gap,
                "certified_error": None,
                "envelope_ratio": res.envelope_ratio,
                "pass": res.passed and res.envelope_ratio <= 1.0,
            }
        )
    return checks


def _decomposition_suite(
    weight: int, n: int, tol: float, cache: str | None
) -> list[dict]:
    table = _load_or_build_table(weight, n, cache)
    psums = partial_sums(table)
    checks = []
    for s in (complex(4.0, 0.0), complex(4.0, 3.0)):
        report = decomposition_check(table, psums, s, sigma_z=0.5, tol=tol)
        checks.append(report.to_json_dict())
    return checks


def _hecke_suite(weight: int, bound: int, cache: str | None) -> list[dict]:
    table = _load_or_build_table(weight, bound, cache)
    report = hecke_report(table, bound)
    return [
        {
            "check": "hecke",
            "params": {"weight": weight, "bound": bound},
            "lhs": None,
            "rhs": None,
            "rel_gap": None,
            "certified_error": None,
            "checked": {
                "multiplicative": report.multiplicative_checked,
                "power": report.power_checked,
                "deligne": report.deligne_checked,
            },
            "first_failure": {
                "multiplicative": report.first_multiplicative_failure,
                "power": report.first_power_failure,
                "deligne": report.first_deligne_failure,
            },
            "pass": report.ok,
        }
    ]


_SUITE_DEFAULT_N = {"decomposition": 100_000, "hecke": 10_000}
_SUITE_DEFAULT_TOL = {
    "kernel": 1e-10,
    "transform": 1e-6,
    "decomposition": 1e-6,
}


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = _experiment_config(args)
    suite = args.suite
    if cfg.weight not in SUPPORTED_WEIGHTS:
        raise ConfigError(
            f"weight {cfg.weight} is not supported; "
            f"choose one of {sorted(SUPPORTED_WEIGHTS)}"
        )
    n = cfg.n if args.n is not None else _SUITE_DEFAULT_N.get(suite, cfg.n)
    tol = (
        cfg.tolerance
        if cfg.tolerance is not None
        else _SUITE_DEFAULT_TOL.get(suite, 1e-6)
    )
    if suite == "kernel":
        checks = _kernel_suite(tol)
    elif suite == "transform":
        checks = _transform_suite(tol)
    elif suite == "decomposition":
        checks = _decomposition_suite(cfg.weight, n, tol, cfg.cache)
    else:
        checks = _hecke_suite(cfg.weight, n, cfg.cache)
    all_pass = all(c["pass"] for c in checks)
    report = {
        "tool": f"cuspsum {__version__}",
        "suite": suite,
        "checks": checks,
        "pass": all_pass,
    }
    text = json.dumps(report, indent=2)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        print(f"wrote {cfg.out}: {'pass' if all_pass else 'FAIL'}")
    else:
        print(text)
    return EXIT_OK if all_pass else EXIT_CHECK_FAILED


# ---------------------------------------------------------------- main


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--weight", type=int, default=None, help="eigenform weight")
    sub.add_argument("--n", type=int, default=None, help="table length")
    sub.add_argument("--cache", default=None, help="cache file path")
    sub.add_argument("--config", default=None, help="INI config file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cuspsum",
        description="Exact eigenform partial-sum statistics workbench.",
    )
    parser.add_argument(
        "--version", action="version", version=f"cuspsum {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate and cache a coefficient table")
    _add_common(gen)
    gen.set_defaults(func=cmd_gen)

    win = sub.add_parser("windows", help="window statistics over an X grid")
    _add_common(win)
    win.add_argument(
        "--grid", default=None, help='X grid: "a,b,c" or "logspace:lo,hi,count"'
    )
    win.add_argument("--mode", default=None, choices=WINDOW_MODES)
    win.add_argument("--delta", type=float, default=None, help="H = X^delta")
    win.add_argument("--y", type=float, default=None, help="H = X/y")
    win.add_argument("--out", default=None, help="CSV path (default stdout)")
    win.add_argument("--tolerance", type=float, default=None)
    win.add_argument("--threads", type=int, default=None)
    win.set_defaults(func=cmd_windows)

    ver = sub.add_parser("verify", help="run a check suite, emit JSON")
    ver.add_argument("suite", choices=VERIFY_SUITES)
    _add_common(ver)
    ver.add_argument("--tolerance", type=float, default=None)
    ver.add_argument("--out", default=None, help="JSON path (default stdout)")
    ver.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CacheFormatError as exc:
        print(f"error: corrupt cache: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:  # includes ConfigError and range/domain errors
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
