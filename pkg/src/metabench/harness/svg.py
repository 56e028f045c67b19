"""Minimal self-contained SVG line charts for convergence curves."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

import numpy as np

COLORS = {
    "ga": "#1f77b4",
    "pso": "#d62728",
    "gwo": "#2ca02c",
    "de": "#9467bd",
    "sa": "#ff7f0e",
}
_FALLBACK = ("#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf")

WIDTH, HEIGHT = 760, 460
LEFT, RIGHT, TOP, BOTTOM = 80, 150, 40, 60


def nice_ticks(lo: float, hi: float, count: int = 6) -> list[float]:
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / max(count - 1, 1)
    mag = 10.0 ** math.floor(math.log10(raw))
    step = next(m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw)
    start = math.ceil(lo / step) * step
    ticks = []
    t = start
    while t <= hi + step * 1e-9:
        ticks.append(round(t, 12))
        t += step
    return ticks


def _fmt(v: float) -> str:
    return f"{v:.4g}"


def convergence_svg(generations, curves: dict, *, title: str = "", ylabel: str = "median best-so-far") -> str:
    """Render one polyline per curve (generation on x, fitness on y).

    The y axis is log-scaled when every plotted value is strictly positive.
    """
    x = np.asarray(generations, dtype=float)
    values = np.concatenate([np.asarray(c, dtype=float) for c in curves.values()])
    log = bool(values.size) and bool(np.all(values > 0))
    ys = {k: (np.log10(v) if log else np.asarray(v, dtype=float)) for k, v in curves.items()}
    allys = np.concatenate(list(ys.values()))
    y_lo, y_hi = float(allys.min()), float(allys.max())
    if y_hi - y_lo < 1e-12:
        y_lo, y_hi = y_lo - 0.5, y_hi + 0.5
    x_lo, x_hi = float(x.min()), float(x.max())
    if x_hi == x_lo:
        x_hi = x_lo + 1.0

    plot_w = WIDTH - LEFT - RIGHT
    plot_h = HEIGHT - TOP - BOTTOM

    def px(v):
        return LEFT + (v - x_lo) / (x_hi - x_lo) * plot_w

    def py(v):
        return TOP + (y_hi - v) / (y_hi - y_lo) * plot_h

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>',
    ]
    if title:
        out.append(
            f'<text x="{LEFT + plot_w / 2:.2f}" y="{TOP - 15}" text-anchor="middle" '
            f'font-size="14">{escape(title)}</text>'
        )

    for t in nice_ticks(x_lo, x_hi):
        out.append(f'<line x1="{px(t):.2f}" y1="{TOP + plot_h}" x2="{px(t):.2f}" y2="{TOP + plot_h + 5}" stroke="black"/>')
        out.append(
            f'<text x="{px(t):.2f}" y="{TOP + plot_h + 18}" text-anchor="middle">{_fmt(t)}</text>'
        )
    if log:
        y_ticks = [float(e) for e in range(math.ceil(y_lo), math.floor(y_hi) + 1)] or nice_ticks(y_lo, y_hi)
    else:
        y_ticks = nice_ticks(y_lo, y_hi)
    for t in y_ticks:
        label = _fmt(10.0**t) if log else _fmt(t)
        out.append(f'<line x1="{LEFT - 5}" y1="{py(t):.2f}" x2="{LEFT}" y2="{py(t):.2f}" stroke="black"/>')
        out.append(f'<text x="{LEFT - 8}" y="{py(t) + 4:.2f}" text-anchor="end">{label}</text>')

    out.append(
        f'<text x="{LEFT + plot_w / 2:.2f}" y="{HEIGHT - 15}" text-anchor="middle">generation</text>'
    )
    ytitle = escape(ylabel + (" (log scale)" if log else ""))
    out.append(
        f'<text x="18" y="{TOP + plot_h / 2:.2f}" text-anchor="middle" '
        f'transform="rotate(-90 18 {TOP + plot_h / 2:.2f})">{ytitle}</text>'
    )

    for i, (name, y) in enumerate(ys.items()):
        color = COLORS.get(name, _FALLBACK[i % len(_FALLBACK)])
        points = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(x, y))
        out.append(
            f'<polyline data-algorithm="{escape(name)}" fill="none" stroke="{color}" '
            f'stroke-width="1.5" points="{points}"/>'
        )
        ly = TOP + 15 + 20 * i
        lx = LEFT + plot_w + 15
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 25}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 32}" y="{ly + 4}">{escape(name)}</text>')

    out.append("</svg>")
    return "\n".join(out) + "\n"
