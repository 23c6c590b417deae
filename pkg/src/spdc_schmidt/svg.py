"""Minimal self-contained SVG line and heat-map rendering.

Output is a deterministic function of the input arrays: coordinates are
written with a fixed number of decimals and no timestamps or ids are emitted.
"""

from __future__ import annotations

import math
from typing import Mapping, Sequence

import numpy as np

WIDTH = 640
HEIGHT = 420
MARGIN = (60, 20, 30, 50)  # left, right, top, bottom
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f")


def _esc(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi <= lo:
        return [lo]
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def _frame(title: str, xlabel: str, ylabel: str, xr, yr, log_x: bool) -> list[str]:
    left, right, top, bottom = MARGIN
    pw, ph = WIDTH - left - right, HEIGHT - top - bottom
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
        f'<text x="{WIDTH / 2:.0f}" y="{top - 10}" text-anchor="middle" font-size="13">{_esc(title)}</text>',
        f'<text x="{left + pw / 2:.0f}" y="{HEIGHT - 12}" text-anchor="middle">{_esc(xlabel)}</text>',
        f'<text x="14" y="{top + ph / 2:.0f}" text-anchor="middle" '
        f'transform="rotate(-90 14 {top + ph / 2:.0f})">{_esc(ylabel)}</text>',
    ]
    for t in _ticks(*xr):
        px = left + (t - xr[0]) / (xr[1] - xr[0] or 1.0) * pw
        label = 10.0**t if log_x else t
        out.append(f'<text x="{_fmt(px)}" y="{top + ph + 14}" text-anchor="middle">{label:.3g}</text>')
    for t in _ticks(*yr):
        py = top + ph - (t - yr[0]) / (yr[1] - yr[0] or 1.0) * ph
        out.append(f'<text x="{left - 4}" y="{_fmt(py + 4)}" text-anchor="end">{t:.3g}</text>')
    return out


def line_plot(
    x: Sequence[float],
    series: Mapping[str, Sequence[float]],
    title: str = "",
    xlabel: str = "",
    ylabel: str = "",
    log_x: bool = False,
) -> str:
    """Line plot of several series sharing one abscissa. NaN samples break the line."""
    x = np.asarray(x, dtype=float)
    xs = np.log10(x) if log_x else x
    ys = {name: np.asarray(v, dtype=float) for name, v in series.items()}
    finite = np.concatenate([v[np.isfinite(v)] for v in ys.values()] or [np.zeros(1)])
    yr = (float(finite.min()), float(finite.max())) if finite.size else (0.0, 1.0)
    if yr[0] == yr[1]:
        yr = (yr[0] - 1.0, yr[1] + 1.0)
    xr = (float(xs.min()), float(xs.max()))
    left, right, top, bottom = MARGIN
    pw, ph = WIDTH - left - right, HEIGHT - top - bottom
    out = _frame(title, xlabel, ylabel, xr, yr, log_x)
    for i, (name, y) in enumerate(ys.items()):
        color = PALETTE[i % len(PALETTE)]
        pieces, current = [], []
        for xv, yv in zip(xs, y):
            if not (math.isfinite(xv) and math.isfinite(yv)):
                if current:
                    pieces.append(current)
                current = []
                continue
            px = left + (xv - xr[0]) / (xr[1] - xr[0] or 1.0) * pw
            py = top + ph - (yv - yr[0]) / (yr[1] - yr[0]) * ph
            current.append(f"{_fmt(px)},{_fmt(py)}")
        if current:
            pieces.append(current)
        for pts in pieces:
            out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.2" points="{" ".join(pts)}"/>')
        out.append(
            f'<text x="{left + pw - 6}" y="{top + 14 + 13 * i}" text-anchor="end" fill="{color}">{_esc(name)}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def heat_map(
    x: Sequence[float], y: Sequence[float], z, title: str = "", xlabel: str = "", ylabel: str = ""
) -> str:
    """Grey-scale heat map of ``z[i, j]`` at (x[j], y[i]); darker is larger."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    z = np.asarray(z, dtype=float)
    zmax = float(np.max(z)) or 1.0
    left, right, top, bottom = MARGIN
    pw, ph = WIDTH - left - right, HEIGHT - top - bottom
    out = _frame(title, xlabel, ylabel, (float(x[0]), float(x[-1])), (float(y[0]), float(y[-1])), False)
    cw, ch = pw / len(x), ph / len(y)
    for i in range(len(y)):
        for j in range(len(x)):
            level = int(round(255 * (1.0 - max(z[i, j], 0.0) / zmax)))
            if level >= 255:
                continue
            px = left + j * cw
            py = top + ph - (i + 1) * ch
            out.append(
                f'<rect x="{_fmt(px)}" y="{_fmt(py)}" width="{_fmt(cw)}" height="{_fmt(ch)}" '
                f'fill="rgb({level},{level},{level})"/>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
