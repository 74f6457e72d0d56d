"""Self-contained SVG plot emission, no plotting library involved.

Four panel types mirror the benchmark figures: per (dimension, kappa)
the trace panels violation-vs-time and objective-vs-time, and per
dimension the summary panels runtime-vs-kappa and objective-vs-kappa
(kappa on a log axis).  Next to every ``.svg`` a ``.dat`` text file
carries the raw plotted numbers.
"""

from __future__ import annotations

import math
import os
from collections import defaultdict

from .harness import BenchmarkRecord, cell_key, read_trace_csv

__all__ = ["emit_plots", "PANEL_TYPES", "VIOLATION_FLOOR"]

PANEL_TYPES = (
    "violation_vs_time",
    "objective_vs_time",
    "runtime_vs_kappa",
    "objective_vs_kappa",
)

# Violations are plotted as log10(max(value, floor)): they start huge and
# end at or below zero, so a linear axis would hide the entire descent.
VIOLATION_FLOOR = 1e-12

_WIDTH, _HEIGHT = 640, 440
_ML, _MR, _MT, _MB = 75, 20, 35, 50
_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _nice_ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if not math.isfinite(lo) or not math.isfinite(hi):
        return []
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / count
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 5.0, 10.0):
        if raw <= mult * mag:
            step = mult * mag
            break
    first = math.ceil(lo / step) * step
    ticks = []
    v = first
    while v <= hi + 1e-9 * step:
        ticks.append(0.0 if abs(v) < 1e-12 * step else v)
        v += step
    return ticks


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _line_plot_svg(path, series, title, xlabel, ylabel, logx=False):
    """Write one SVG line plot.  ``series`` is [(label, xs, ys), ...]."""
    pts = [
        (math.log10(x) if logx else x, y)
        for _, xs, ys in series
        for x, y in zip(xs, ys)
        if math.isfinite(y) and (x > 0 if logx else math.isfinite(x))
    ]
    if not pts:
        return False
    xmin = min(p[0] for p in pts)
    xmax = max(p[0] for p in pts)
    ymin = min(p[1] for p in pts)
    ymax = max(p[1] for p in pts)
    if xmax <= xmin:
        xmax = xmin + 1.0
    if ymax <= ymin:
        ymax = ymin + 1.0
    xpad = 0.03 * (xmax - xmin)
    ypad = 0.06 * (ymax - ymin)
    xmin, xmax = xmin - xpad, xmax + xpad
    ymin, ymax = ymin - ypad, ymax + ypad

    inner_w = _WIDTH - _ML - _MR
    inner_h = _HEIGHT - _MT - _MB

    def sx(x):
        return _ML + (x - xmin) / (xmax - xmin) * inner_w

    def sy(y):
        return _HEIGHT - _MB - (y - ymin) / (ymax - ymin) * inner_h

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<text x="{_WIDTH / 2:.1f}" y="20" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{_escape(title)}</text>',
    ]
    # axes
    out.append(
        f'<path d="M {_ML} {_MT} V {_HEIGHT - _MB} H {_WIDTH - _MR}" '
        'stroke="black" fill="none"/>'
    )
    if logx:
        xticks = range(math.ceil(xmin), math.floor(xmax) + 1)
        xtick_pairs = [(float(k), f"10^{k}") for k in xticks]
    else:
        xtick_pairs = [(v, f"{v:g}") for v in _nice_ticks(xmin, xmax)]
    for v, label in xtick_pairs:
        px = sx(v)
        out.append(
            f'<line x1="{px:.1f}" y1="{_HEIGHT - _MB}" x2="{px:.1f}" '
            f'y2="{_HEIGHT - _MB + 5}" stroke="black"/>'
        )
        out.append(
            f'<text x="{px:.1f}" y="{_HEIGHT - _MB + 18}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{_escape(label)}</text>'
        )
    for v in _nice_ticks(ymin, ymax):
        py = sy(v)
        out.append(
            f'<line x1="{_ML - 5}" y1="{py:.1f}" x2="{_ML}" y2="{py:.1f}" stroke="black"/>'
        )
        out.append(
            f'<text x="{_ML - 8}" y="{py + 4:.1f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{v:g}</text>'
        )
    out.append(
        f'<text x="{_ML + inner_w / 2:.1f}" y="{_HEIGHT - 10}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">{_escape(xlabel)}</text>'
    )
    out.append(
        f'<text x="18" y="{_MT + inner_h / 2:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12" '
        f'transform="rotate(-90 18 {_MT + inner_h / 2:.1f})">{_escape(ylabel)}</text>'
    )
    for idx, (label, xs, ys) in enumerate(series):
        color = _COLORS[idx % len(_COLORS)]
        coords = [
            f"{sx(math.log10(x) if logx else x):.2f},{sy(y):.2f}"
            for x, y in zip(xs, ys)
            if math.isfinite(y) and (x > 0 if logx else math.isfinite(x))
        ]
        if not coords:
            continue
        if len(coords) == 1:
            coords = coords * 2  # degenerate one-point series still draws
        out.append(
            f'<polyline points="{" ".join(coords)}" fill="none" '
            f'stroke="{color}" stroke-width="1.5"/>'
        )
        out.append(
            f'<text x="{_WIDTH - _MR - 6}" y="{_MT + 14 + 14 * idx}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11" fill="{color}">{_escape(label)}</text>'
        )
    out.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(out) + "\n")
    return True


def _write_dat(path, series, comment):
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"# {comment}\n")
        for label, xs, ys in series:
            fh.write(f"# series: {label}\n")
            for x, y in zip(xs, ys):
                fh.write(f"{x:.17g} {y:.17g}\n")
            fh.write("\n")


def _median(values: list[float]) -> float:
    vals = sorted(v for v in values if math.isfinite(v))
    if not vals:
        return float("nan")
    mid = len(vals) // 2
    if len(vals) % 2:
        return vals[mid]
    return 0.5 * (vals[mid - 1] + vals[mid])


def emit_plots(records: list[BenchmarkRecord], traces_dir, out_dir) -> list[str]:
    """Emit all four panel types; returns a list of warning strings."""
    warnings: list[str] = []
    if not records:
        warnings.append("no records; nothing to plot")
        return warnings
    os.makedirs(out_dir, exist_ok=True)
    traces_dir = os.fspath(traces_dir)

    by_dim: dict[tuple[int, int], list[BenchmarkRecord]] = defaultdict(list)
    for rec in records:
        by_dim[(rec.m, rec.n)].append(rec)

    for (m, n), dim_records in sorted(by_dim.items()):
        kappas = sorted({r.kappa for r in dim_records})
        algorithms = sorted({r.algorithm for r in dim_records})

        # trace panels, one pair per kappa
        for kappa in kappas:
            cell_records = [r for r in dim_records if r.kappa == kappa]
            viol_series, obj_series = [], []
            for rec in sorted(cell_records, key=lambda r: (r.algorithm, r.seed)):
                trace_path = os.path.join(
                    traces_dir, cell_key(rec.m, rec.n, rec.kappa, rec.seed, rec.algorithm) + ".csv"
                )
                if not os.path.exists(trace_path):
                    warnings.append(f"missing trace {trace_path}; line skipped")
                    continue
                samples = read_trace_csv(trace_path)
                label = f"{rec.algorithm} seed={rec.seed}"
                times = [s.elapsed for s in samples]
                viol_series.append(
                    (
                        label,
                        times,
                        [math.log10(max(s.max_violation, VIOLATION_FLOOR)) for s in samples],
                    )
                )
                obj_series.append((label, times, [s.objective for s in samples]))
            stem = f"m{m}_n{n}_kappa{kappa:g}"
            for panel, series, ylabel in (
                ("violation_vs_time", viol_series, f"log10(max violation, floor {VIOLATION_FLOOR:g})"),
                ("objective_vs_time", obj_series, "objective value"),
            ):
                if not series:
                    warnings.append(f"no traces for {stem}; {panel} skipped")
                    continue
                base = os.path.join(out_dir, f"{panel}_{stem}")
                title = f"{panel.replace('_', ' ')}  {m}x{n}, kappa={kappa:g}"
                if _line_plot_svg(base + ".svg", series, title, "runtime [s]", ylabel):
                    _write_dat(base + ".dat", series, title)
                else:
                    warnings.append(f"no finite data for {stem}; {panel} skipped")

        # summary panels over kappa
        for panel, metric, ylabel in (
            ("runtime_vs_kappa", lambda r: r.runtime_seconds, "runtime [s]"),
            ("objective_vs_kappa", lambda r: r.objective_final, "final objective"),
        ):
            series = []
            for alg in algorithms:
                xs, ys = [], []
                for kappa in kappas:
                    vals = [
                        metric(r)
                        for r in dim_records
                        if r.algorithm == alg and r.kappa == kappa
                    ]
                    med = _median(vals)
                    if math.isfinite(med):
                        xs.append(kappa)
                        ys.append(med)
                if xs:
                    series.append((alg, xs, ys))
            if not series:
                warnings.append(f"no usable records for {m}x{n}; {panel} skipped")
                continue
            base = os.path.join(out_dir, f"{panel}_m{m}_n{n}")
            title = f"{panel.replace('_', ' ')}  {m}x{n} (median over seeds)"
            if _line_plot_svg(base + ".svg", series, title, "kappa", ylabel, logx=True):
                _write_dat(base + ".dat", series, title)
            else:
                warnings.append(f"no finite data for {m}x{n}; {panel} skipped")
    return warnings
