"""Serialization of experiment output: CSV, JSON, and standalone SVG plots.

All emitters are pure string builders with fixed float formatting, so a
given report or curve bundle always serializes to identical bytes.
"""

from __future__ import annotations

import json

import numpy as np

from .experiments import DenoiseCurves, ExperimentReport

__all__ = ["report_csv", "report_json", "emit_report", "curves_csv", "curves_svg", "emit_curves"]

REPORT_HEADER = "method,l2_error,max_error,aisnr_db,trials"

_PALETTE = (
    "#1f77b4",
    "#ff7f0e",
    "#2ca02c",
    "#d62728",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#7f7f7f",
    "#bcbd22",
    "#17becf",
)


def _fmt(value: float) -> str:
    return format(float(value), ".12g")


def report_csv(report: ExperimentReport) -> str:
    lines = [REPORT_HEADER]
    for row in report.rows:
        lines.append(
            f"{row.method_label},{_fmt(row.l2_error)},{_fmt(row.max_error)},"
            f"{_fmt(row.aisnr_db)},{row.trials}"
        )
    return "\n".join(lines) + "\n"


def report_json(report: ExperimentReport) -> str:
    payload = {
        "kind": report.kind,
        "config": report.config,
        "rows": [
            {
                "method": row.method_label,
                "l2_error": row.l2_error,
                "max_error": row.max_error,
                "aisnr_db": row.aisnr_db,
                "trials": row.trials,
            }
            for row in report.rows
        ],
        "mean_input_snr_db": report.mean_input_snr_db,
        "failures": report.failures,
        "runtime_seconds": round(report.runtime_seconds, 6),
    }
    return json.dumps(payload, indent=2) + "\n"


def emit_report(report: ExperimentReport, path: str, fmt: str = "csv") -> None:
    if fmt == "csv":
        text = report_csv(report)
    elif fmt == "json":
        text = report_json(report)
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)


def _series(curves: DenoiseCurves) -> list[tuple[str, np.ndarray, np.ndarray]]:
    out = [("truth", curves.grid, curves.truth), ("noisy", curves.node_x, curves.noisy_samples)]
    for label, values in curves.reconstructions.items():
        out.append((label, curves.grid, values))
    return out


def curves_csv(curves: DenoiseCurves) -> str:
    lines = ["series,x,y"]
    for label, xs, ys in _series(curves):
        for x, y in zip(xs, ys):
            lines.append(f"{label},{_fmt(x)},{_fmt(y)}")
    return "\n".join(lines) + "\n"


def curves_svg(
    curves: DenoiseCurves, width: int = 960, height: int = 600
) -> str:
    """Standalone SVG: one polyline per series, axes, and a legend."""
    margin_left, margin_right, margin_top, margin_bottom = 70, 180, 30, 50
    plot_w = width - margin_left - margin_right
    plot_h = height - margin_top - margin_bottom
    series = _series(curves)
    xs_all = np.concatenate([xs for _, xs, _ in series])
    ys_all = np.concatenate([ys for _, _, ys in series])
    x_lo, x_hi = float(xs_all.min()), float(xs_all.max())
    y_lo, y_hi = float(ys_all.min()), float(ys_all.max())
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0

    def px(x: float) -> float:
        return margin_left + (x - x_lo) / (x_hi - x_lo) * plot_w

    def py(y: float) -> float:
        return margin_top + (y_hi - y) / (y_hi - y_lo) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{margin_left}" y="{margin_top}" width="{plot_w}" height="{plot_h}" '
        'fill="none" stroke="#333333" stroke-width="1"/>',
    ]
    for tick in (x_lo, 0.5 * (x_lo + x_hi), x_hi):
        parts.append(
            f'<text x="{px(tick):.3f}" y="{height - margin_bottom + 20}" font-size="12" '
            f'text-anchor="middle" fill="#333333">{tick:.3g}</text>'
        )
    for tick in (y_lo, 0.5 * (y_lo + y_hi), y_hi):
        parts.append(
            f'<text x="{margin_left - 8}" y="{py(tick):.3f}" font-size="12" '
            f'text-anchor="end" fill="#333333">{tick:.3g}</text>'
        )
    for i, (label, xs, ys) in enumerate(series):
        color = _PALETTE[i % len(_PALETTE)]
        points = " ".join(f"{px(float(x)):.3f},{py(float(y)):.3f}" for x, y in zip(xs, ys))
        parts.append(
            f'<polyline id="series-{label}" points="{points}" fill="none" '
            f'stroke="{color}" stroke-width="1.5"/>'
        )
        ly = margin_top + 16 + 18 * i
        lx = width - margin_right + 12
        parts.append(
            f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 22}" y2="{ly - 4}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        parts.append(
            f'<text x="{lx + 28}" y="{ly}" font-size="12" fill="#333333">{label}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def emit_curves(curves: DenoiseCurves, csv_path: str | None = None, svg_path: str | None = None) -> None:
    if csv_path is not None:
        with open(csv_path, "w", encoding="utf-8") as handle:
            handle.write(curves_csv(curves))
    if svg_path is not None:
        with open(svg_path, "w", encoding="utf-8") as handle:
            handle.write(curves_svg(curves))
