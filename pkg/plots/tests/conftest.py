"""Shared fixtures: real CSV inputs produced by the table CLI, and a
runner for the rendering CLI."""

import os
import subprocess
import sys

import pytest


def _run_cuspsum(args, env):
    proc = subprocess.run(
        [sys.executable, "-m", "cuspsum", *args],
        env=env,
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, f"cuspsum {' '.join(args)} failed:\n{proc.stderr}"
    return proc


@pytest.fixture(scope="session")
def plot_cmd():
    """Run the rendering CLI exactly as a shell user would; returns the process."""

    def run(*args):
        return subprocess.run(
            [sys.executable, "-m", "plots", *map(str, args)],
            capture_output=True,
            text=True,
        )

    return run


@pytest.fixture(scope="session")
def produced_csvs(tmp_path_factory):
    """CSV files written by the table CLI at desk scale (N = 4000)."""
    base = tmp_path_factory.mktemp("csv")
    env = dict(os.environ, CUSPSUM_CACHE_DIR=str(base / "cache"))
    _run_cuspsum(["gen", "--weight", "12", "--n", "4000"], env)

    theorem = base / "theorem.csv"
    _run_cuspsum(
        [
            "windows", "--weight", "12", "--n", "4000",
            "--grid", "1000,2000,3000", "--mode", "theorem",
            "--out", str(theorem),
        ],
        env,
    )
    fixed_delta = base / "fixed_delta.csv"
    _run_cuspsum(
        [
            "windows", "--weight", "12", "--n", "4000",
            "--grid", "logspace:2.7,3.45,5", "--mode", "fixed_delta", "--delta", "0.6",
            "--out", str(fixed_delta),
        ],
        env,
    )
    empty = base / "empty.csv"
    _run_cuspsum(["windows", "--weight", "12", "--n", "10", "--out", str(empty)], env)

    return {"theorem": theorem, "fixed_delta": fixed_delta, "empty": empty}
