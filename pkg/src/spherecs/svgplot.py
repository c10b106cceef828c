"""Self-contained SVG line plots, enough to eyeball a sweep without pulling
in a plotting stack.  The CSV stays the canonical artifact."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

__all__ = ["line_plot_svg"]

_PALETTE = (
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#9467bd",
    "#ff7f0e",
    "#8c564b",
    "#17becf",
    "#7f7f7f",
)

_WIDTH, _HEIGHT = 720, 480
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 64, 24, 36, 48


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi == lo:
        return [lo]
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def _transform_x(xs: list[float], log_x: bool) -> tuple[list[float], list[str]]:
    """Plot coordinates plus tick labels; log axes park 0 one decade left."""
    if not log_x:
        return list(xs), [f"{t:.3g}" for t in _ticks(min(xs), max(xs))]
    positives = [x for x in xs if x > 0]
    floor = math.log10(min(positives)) - 1.0
    coords = [math.log10(x) if x > 0 else floor for x in xs]
    ticks = _ticks(min(coords), max(coords))
    labels = []
    for t in ticks:
        labels.append("0" if t <= floor else f"{10**t:.3g}")
    return coords, labels


def line_plot_svg(
    x: list[float],
    series: list[tuple[str, list[float]]],
    *,
    title: str = "",
    xlabel: str = "",
    ylabel: str = "",
    log_x: bool = False,
) -> str:
    """Render one or more y(x) curves as a standalone SVG document."""
    if not x or not series:
        raise ValueError("nothing to plot")
    xs, x_tick_labels = _transform_x([float(v) for v in x], log_x)

    ys_all = [float(v) for _, ys in series for v in ys if v is not None]
    if not ys_all:
        raise ValueError("all series are undefined")
    y_lo, y_hi = min(ys_all), max(ys_all)
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 1.0, y_hi + 1.0
    x_lo, x_hi = min(xs), max(xs)
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 1.0, x_hi + 1.0

    plot_w = _WIDTH - _MARGIN_L - _MARGIN_R
    plot_h = _HEIGHT - _MARGIN_T - _MARGIN_B

    def px(v: float) -> float:
        return _MARGIN_L + plot_w * (v - x_lo) / (x_hi - x_lo)

    def py(v: float) -> float:
        return _MARGIN_T + plot_h * (1.0 - (v - y_lo) / (y_hi - y_lo))

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<rect x="{_MARGIN_L}" y="{_MARGIN_T}" width="{plot_w}" height="{plot_h}" '
        'fill="none" stroke="#333" stroke-width="1"/>',
    ]
    if title:
        parts.append(
            f'<text x="{_WIDTH / 2:.1f}" y="22" text-anchor="middle" '
            f'font-family="sans-serif" font-size="15">{escape(title)}</text>'
        )

    x_ticks = _ticks(x_lo, x_hi)
    for t, label in zip(x_ticks, x_tick_labels):
        cx = px(t)
        parts.append(
            f'<line x1="{cx:.2f}" y1="{_MARGIN_T + plot_h}" x2="{cx:.2f}" '
            f'y2="{_MARGIN_T + plot_h + 5}" stroke="#333"/>'
        )
        parts.append(
            f'<text x="{cx:.2f}" y="{_MARGIN_T + plot_h + 18}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{escape(label)}</text>'
        )
    for t in _ticks(y_lo, y_hi):
        cy = py(t)
        parts.append(
            f'<line x1="{_MARGIN_L - 5}" y1="{cy:.2f}" x2="{_MARGIN_L}" '
            f'y2="{cy:.2f}" stroke="#333"/>'
        )
        parts.append(
            f'<text x="{_MARGIN_L - 8}" y="{cy + 4:.2f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{t:.3g}</text>'
        )
    if xlabel:
        parts.append(
            f'<text x="{_MARGIN_L + plot_w / 2:.1f}" y="{_HEIGHT - 12}" '
            f'text-anchor="middle" font-family="sans-serif" font-size="13">'
            f"{escape(xlabel)}</text>"
        )
    if ylabel:
        cy = _MARGIN_T + plot_h / 2
        parts.append(
            f'<text x="16" y="{cy:.1f}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="13" '
            f'transform="rotate(-90 16 {cy:.1f})">{escape(ylabel)}</text>'
        )

    for i, (label, ys) in enumerate(series):
        color = _PALETTE[i % len(_PALETTE)]
        points = " ".join(
            f"{px(xv):.2f},{py(float(yv)):.2f}"
            for xv, yv in zip(xs, ys)
            if yv is not None
        )
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.6" '
            f'points="{points}"/>'
        )
        ly = _MARGIN_T + 16 + 16 * i
        lx = _MARGIN_L + plot_w - 150
        parts.append(
            f'<line x1="{lx}" y1="{ly - 4}" x2="{lx + 22}" y2="{ly - 4}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        parts.append(
            f'<text x="{lx + 28}" y="{ly}" font-family="sans-serif" '
            f'font-size="11">{escape(label)}</text>'
        )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
