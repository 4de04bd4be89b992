"""Minimal deterministic SVG line charts for trajectory files."""

from __future__ import annotations

from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

from .errors import ValidationError
from .solver import read_trajectory_csv

WIDTH, HEIGHT = 960, 540
MARGIN = {"left": 70, "right": 190, "top": 30, "bottom": 50}
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
           "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22")


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _series_from_files(paths) -> list[tuple[str, np.ndarray, np.ndarray]]:
    series = []
    for p in paths:
        traj = read_trajectory_csv(p)
        t, y = traj.grid_part()
        stem = Path(p).stem
        for i in range(y.shape[1]):
            label = stem if y.shape[1] == 1 else f"{stem}:y_{i}"
            series.append((label, t, y[:, i]))
    return series


def render_svg(series, title: str = "") -> str:
    if not series:
        raise ValidationError("nothing to plot")
    t_all = np.concatenate([s[1] for s in series])
    y_all = np.concatenate([s[2] for s in series])
    t_lo, t_hi = float(t_all.min()), float(t_all.max())
    y_lo, y_hi = float(y_all.min()), float(y_all.max())
    if t_hi == t_lo:
        t_hi = t_lo + 1.0
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 0.5, y_hi + 0.5
    x0, x1 = MARGIN["left"], WIDTH - MARGIN["right"]
    y0, y1 = HEIGHT - MARGIN["bottom"], MARGIN["top"]

    def sx(t):
        return x0 + (t - t_lo) / (t_hi - t_lo) * (x1 - x0)

    def sy(v):
        return y0 + (v - y_lo) / (y_hi - y_lo) * (y1 - y0)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{x0}" y="{y1}" width="{x1 - x0}" height="{y0 - y1}" fill="none" stroke="black"/>',
    ]
    if title:
        out.append(f'<text x="{WIDTH // 2}" y="20" text-anchor="middle" font-size="14">'
                   f'{escape(title)}</text>')
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        tv = t_lo + frac * (t_hi - t_lo)
        yv = y_lo + frac * (y_hi - y_lo)
        out.append(f'<text x="{_fmt(sx(tv))}" y="{y0 + 18}" text-anchor="middle" '
                   f'font-size="11">{tv:.4g}</text>')
        out.append(f'<text x="{x0 - 6}" y="{_fmt(sy(yv) + 4)}" text-anchor="end" '
                   f'font-size="11">{yv:.4g}</text>')
    for i, (label, t, y) in enumerate(series):
        color = PALETTE[i % len(PALETTE)]
        pts = " ".join(f"{_fmt(sx(a))},{_fmt(sy(b))}" for a, b in zip(t, y))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        ly = MARGIN["top"] + 16 * i + 10
        out.append(f'<line x1="{x1 + 10}" y1="{ly}" x2="{x1 + 30}" y2="{ly}" stroke="{color}" '
                   f'stroke-width="2"/>')
        out.append(f'<text x="{x1 + 35}" y="{ly + 4}" font-size="11">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_plot(paths, out_path: str | Path, title: str = "") -> Path:
    """Write an SVG overlay of every y column in the given trajectory CSVs.

    Nothing is written if ``paths`` is empty or any file is malformed.
    """
    paths = list(paths)
    if not paths:
        raise ValidationError("emit_plot needs at least one trajectory file")
    svg = render_svg(_series_from_files(paths), title=title)
    out_path = Path(out_path)
    out_path.write_text(svg)
    return out_path
