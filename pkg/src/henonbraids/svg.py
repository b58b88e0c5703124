"""
Static SVG rendering of scatter grids and isotracal paths in the (a, b) plane.

Scatter cells are filled rectangles, darker for higher periods; paths are
polylines. Output is plain text with fixed number formatting so that equal
inputs give byte-identical files.
"""
from __future__ import annotations

from typing import Sequence

from .henon import IsotracalPath, ScatterGrid

MARGIN = 40
PATH_COLOURS = ("#c0392b", "#27ae60", "#2c6fbb", "#d4ac0d")


def _grey(rank: int, count: int) -> str:
    # rank 0 is the lowest period: lightest.
    level = 200 - int(150 * rank / max(1, count - 1)) if count > 1 else 150
    return f"rgb({level},{level},{level})"


class _Frame:
    def __init__(self, a_range, b_range, width: int, height: int):
        self.a0, self.a1 = a_range
        self.b0, self.b1 = b_range
        self.w, self.h = width, height

    def x(self, a: float) -> float:
        return MARGIN + (a - self.a0) / (self.a1 - self.a0) * self.w

    def y(self, b: float) -> float:
        return MARGIN + (self.b1 - b) / (self.b1 - self.b0) * self.h


def render(grids: Sequence[ScatterGrid] = (), paths: Sequence[IsotracalPath] = (),
           a_range: tuple[float, float] | None = None, b_range: tuple[float, float] | None = None,
           width: int = 800, height: int = 600, title: str = "") -> str:
    if a_range is None or b_range is None:
        if grids:
            a_range = a_range or grids[0].a_range
            b_range = b_range or grids[0].b_range
        elif paths:
            a_vals = [s.a for p in paths for s in p.samples]
            b_vals = [s.b for p in paths for s in p.samples]
            a_range = a_range or (min(a_vals), max(a_vals))
            b_range = b_range or (min(b_vals), max(b_vals) or 1.0)
        else:
            a_range, b_range = a_range or (0.0, 1.0), b_range or (0.0, 1.0)
    f = _Frame(a_range, b_range, width, height)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width + 2 * MARGIN}" '
        f'height="{height + 2 * MARGIN}" viewBox="0 0 {width + 2 * MARGIN} {height + 2 * MARGIN}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{MARGIN}" y="{MARGIN - 12}" font-size="14">{title}</text>')

    periods = sorted({int(v) for g in grids for v in g.periods.ravel() if v})
    for g in grids:
        na, nb = g.resolution
        da = (g.a_range[1] - g.a_range[0]) / max(1, na - 1)
        db = (g.b_range[1] - g.b_range[0]) / max(1, nb - 1)
        cw = da / (f.a1 - f.a0) * f.w
        ch = db / (f.b1 - f.b0) * f.h
        for q in sorted({int(v) for v in g.periods.ravel() if v}):
            fill = _grey(periods.index(q), len(periods))
            out.append(f'<g fill="{fill}" stroke="none" data-period="{q}">')
            for a, b in g.cells(q):
                out.append(f'<rect x="{f.x(a) - cw / 2:.2f}" y="{f.y(b) - ch / 2:.2f}" '
                           f'width="{cw:.2f}" height="{ch:.2f}"/>')
            out.append("</g>")

    for path in paths:
        colour = PATH_COLOURS[(path.period % len(PATH_COLOURS))]
        pts = " ".join(f"{f.x(s.a):.2f},{f.y(s.b):.2f}" for s in path.samples)
        out.append(f'<polyline fill="none" stroke="{colour}" stroke-width="1.5" '
                   f'data-period="{path.period}" data-branch="{path.branch}" points="{pts}"/>')

    # axes
    x0, x1, y0, y1 = f.x(f.a0), f.x(f.a1), f.y(f.b0), f.y(f.b1)
    out.append(f'<rect x="{x0:.2f}" y="{y1:.2f}" width="{x1 - x0:.2f}" height="{y0 - y1:.2f}" '
               'fill="none" stroke="black"/>')
    out.append(f'<text x="{x0:.2f}" y="{y0 + 16:.2f}" font-size="11">a={f.a0:g}</text>')
    out.append(f'<text x="{x1 - 50:.2f}" y="{y0 + 16:.2f}" font-size="11">a={f.a1:g}</text>')
    out.append(f'<text x="4" y="{y0:.2f}" font-size="11">b={f.b0:g}</text>')
    out.append(f'<text x="4" y="{y1 + 10:.2f}" font-size="11">b={f.b1:g}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
