"""Static SVG figure: sample cloud, empirical hull and predicted polygon.

Output is a pure function of the inputs (fixed number formatting, samples
deduplicated on the pixel grid in sorted order), so identical runs give
byte-identical files.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .geometry import Polygon

WIDTH = 800.0


def _fmt(x: float) -> str:
    s = f"{x:.2f}"
    return "0.00" if s == "-0.00" else s


def render(
    samples: np.ndarray,
    empirical: Polygon,
    predicted: Polygon | None = None,
    labels: Sequence[str] | None = None,
    title: str = "",
) -> str:
    verts = np.array(empirical.vertices + (predicted.vertices if predicted else ()))
    x0, x1 = verts.real.min(), verts.real.max()
    y0, y1 = verts.imag.min(), verts.imag.max()
    mx, my = 0.1 * (x1 - x0), 0.1 * (y1 - y0)
    x0, x1, y0, y1 = x0 - mx, x1 + mx, y0 - my, y1 + my
    scale = WIDTH / (x1 - x0)
    height = (y1 - y0) * scale

    def to_px(z: complex) -> tuple[float, float]:
        return (z.real - x0) * scale, (y1 - z.imag) * scale

    # one 0.5px dot per occupied 1px cell
    px = np.round((np.asarray(samples).real - x0) * scale)
    py = np.round((y1 - np.asarray(samples).imag) * scale)
    cells = np.unique(np.stack([px, py], axis=1), axis=0)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(WIDTH)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(WIDTH)} {_fmt(height)}">',
        f'<rect x="0" y="0" width="{_fmt(WIDTH)}" height="{_fmt(height)}" fill="#ffffff"/>',
    ]
    if title:
        out.append(f'<title>{title}</title>')
    path = "".join(f"M{int(x)} {int(y)}h0.5" for x, y in cells)
    out.append(f'<path d="{path}" stroke="#1f4e79" stroke-width="0.5" fill="none"/>')

    def poly_el(poly: Polygon, stroke: str, extra: str = "") -> str:
        pts = " ".join(f"{_fmt(a)},{_fmt(b)}" for a, b in map(to_px, poly.vertices))
        return f'<polygon points="{pts}" fill="none" stroke="{stroke}" stroke-width="1"{extra}/>'

    out.append(poly_el(empirical, "#888888", ' stroke-dasharray="4,3"'))
    if predicted is not None:
        out.append(poly_el(predicted, "#c0392b"))
        centre = complex(np.mean(np.array(predicted.vertices)))
        for v, name in zip(predicted.vertices, labels or ()):
            d = v - centre
            off = d / abs(d) * 12 / scale if d else 0
            lx, ly = to_px(v + off)
            vx, vy = to_px(v)
            out.append(f'<circle cx="{_fmt(vx)}" cy="{_fmt(vy)}" r="2" fill="#c0392b"/>')
            out.append(f'<text x="{_fmt(lx)}" y="{_fmt(ly)}" font-family="sans-serif" font-size="11" '
                       f'text-anchor="middle" dominant-baseline="middle">{name}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
