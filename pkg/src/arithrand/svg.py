"""Minimal self-contained SVG plots (scatter and polyline) with inline axes.

Output is a pure function of the input data, so identical runs produce
byte-identical files.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

WIDTH, HEIGHT = 800, 500
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 20, 40, 50


def _nice_ticks(lo: float, hi: float, count: int = 6) -> list[float]:
    if hi <= lo:
        hi = lo + 1
    raw = (hi - lo) / count
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 5, 10) if m * mag >= raw), default=10 * mag)
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * step:
        ticks.append(round(t, 10))
        t += step
    return ticks


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _label(v: float) -> str:
    if v == int(v):
        return str(int(v))
    return f"{v:g}"


class _Canvas:
    def __init__(self, xs, ys, title, xlabel, ylabel):
        self.x0, self.x1 = min(xs), max(xs)
        self.y0, self.y1 = min(ys), max(ys)
        if self.x1 == self.x0:
            self.x1 = self.x0 + 1
        if self.y1 == self.y0:
            self.y1 = self.y0 + 1
        pad = 0.05 * (self.y1 - self.y0)
        self.y0 -= pad
        self.y1 += pad
        self.parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
            f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
            f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
            f'<text x="{WIDTH / 2}" y="22" text-anchor="middle" font-size="15">{escape(title)}</text>',
        ]
        self._axes(xlabel, ylabel)

    def sx(self, x: float) -> float:
        w = WIDTH - MARGIN_L - MARGIN_R
        return MARGIN_L + (x - self.x0) / (self.x1 - self.x0) * w

    def sy(self, y: float) -> float:
        h = HEIGHT - MARGIN_T - MARGIN_B
        return HEIGHT - MARGIN_B - (y - self.y0) / (self.y1 - self.y0) * h

    def _axes(self, xlabel, ylabel):
        left, right = MARGIN_L, WIDTH - MARGIN_R
        top, bottom = MARGIN_T, HEIGHT - MARGIN_B
        p = self.parts
        p.append(f'<rect x="{left}" y="{top}" width="{right - left}" height="{bottom - top}" '
                 'fill="none" stroke="black"/>')
        for t in _nice_ticks(self.x0, self.x1):
            x = _fmt(self.sx(t))
            p.append(f'<line x1="{x}" y1="{bottom}" x2="{x}" y2="{bottom + 5}" stroke="black"/>')
            p.append(f'<text x="{x}" y="{bottom + 18}" text-anchor="middle">{_label(t)}</text>')
        for t in _nice_ticks(self.y0, self.y1):
            y = _fmt(self.sy(t))
            p.append(f'<line x1="{left - 5}" y1="{y}" x2="{left}" y2="{y}" stroke="black"/>')
            p.append(f'<text x="{left - 8}" y="{y}" text-anchor="end" dominant-baseline="middle">'
                     f'{_label(t)}</text>')
        if self.y0 < 0 < self.y1:
            y = _fmt(self.sy(0))
            p.append(f'<line x1="{left}" y1="{y}" x2="{right}" y2="{y}" stroke="#999" '
                     'stroke-dasharray="4 3"/>')
        p.append(f'<text x="{(left + right) / 2}" y="{HEIGHT - 10}" text-anchor="middle">'
                 f'{escape(xlabel)}</text>')
        p.append(f'<text x="16" y="{(top + bottom) / 2}" text-anchor="middle" '
                 f'transform="rotate(-90 16 {(top + bottom) / 2})">{escape(ylabel)}</text>')

    def points(self, xs, ys, color="#1f4e9a", radius=1.6):
        for x, y in zip(xs, ys):
            self.parts.append(
                f'<circle cx="{_fmt(self.sx(x))}" cy="{_fmt(self.sy(y))}" r="{radius}" fill="{color}"/>'
            )

    def line(self, xs, ys, color="#1f4e9a", width=1.0, label=None):
        pts = " ".join(f"{_fmt(self.sx(x))},{_fmt(self.sy(y))}" for x, y in zip(xs, ys))
        self.parts.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="{width}"/>'
        )
        if label:
            self.parts.append(
                f'<text x="{WIDTH - MARGIN_R - 6}" y="{MARGIN_T + 16}" text-anchor="end" '
                f'fill="{color}">{escape(label)}</text>'
            )

    def render(self) -> str:
        return "\n".join(self.parts + ["</svg>"]) + "\n"


def scatter(xs, ys, title="", xlabel="", ylabel="", guides=()) -> str:
    """Scatter plot; ``guides`` is a sequence of ``(xs, ys, label)`` curves."""
    all_y = list(ys)
    for _, gy, _ in guides:
        all_y.extend(gy)
    canvas = _Canvas(list(xs), all_y, title, xlabel, ylabel)
    canvas.points(xs, ys)
    for gx, gy, label in guides:
        canvas.line(gx, gy, color="#c0392b", width=1.2, label=label)
    return canvas.render()


def polyline(xs, ys, title="", xlabel="", ylabel="") -> str:
    canvas = _Canvas(list(xs), list(ys), title, xlabel, ylabel)
    canvas.line(xs, ys, width=0.6)
    return canvas.render()
