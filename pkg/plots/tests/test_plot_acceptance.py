"""Acceptance: every figure kind renders from CSV files the table CLI
produced, and the scaling figure has the promised structure."""

import math

from plots.figures import KINDS, build_figure, read_rows


def report(name: str, ok: bool, detail: str) -> None:
    print(f"[ACCEPTANCE] {name}: {'PASS' if ok else 'FAIL'} — {detail}")
    assert ok, f"{name}: {detail}"


def test_plots_render_all_kinds(produced_csvs, plot_cmd, tmp_path):
    rendered = []
    for kind in KINDS:
        out = tmp_path / f"{kind}.png"
        proc = plot_cmd(kind, "--in", produced_csvs["theorem"], "--out", out)
        rendered.append(proc.returncode == 0 and out.exists() and out.stat().st_size > 0)
    rows = read_rows(produced_csvs["theorem"])
    fig = build_figure("window_scaling", [("theorem", rows)], 12)
    ax = fig.axes[0]
    markers = [line for line in ax.get_lines() if line.get_linestyle() == "None"]
    marker_count = sum(len(line.get_xdata()) for line in markers)
    guides = [
        line for line in ax.get_lines() if str(line.get_label()).startswith("slope k - 1/2")
    ]
    slope = (
        (math.log10(guides[0].get_ydata()[-1]) - math.log10(guides[0].get_ydata()[0]))
        / (math.log10(guides[0].get_xdata()[-1]) - math.log10(guides[0].get_xdata()[0]))
        if guides
        else float("nan")
    )
    ok = (
        all(rendered)
        and len(rows) > 0
        and marker_count == len(rows)
        and len(guides) == 1
        and abs(slope - 11.5) < 1e-9
    )
    report(
        "plots-render-all-kinds",
        ok,
        f"rendered {sum(rendered)}/{len(KINDS)} kinds; scaling figure has "
        f"{marker_count} markers for {len(rows)} CSV rows and {len(guides)} "
        f"guide line(s) of slope {slope:.6f}",
    )
