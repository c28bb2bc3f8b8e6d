"""Minimal SVG writer: one polyline per point series."""

from __future__ import annotations

from typing import Sequence

WIDTH, HEIGHT = 800, 600
MARGIN = 0.05
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")
STYLES = ("lines", "lines+points")


def _num(v: float) -> str:
    return format(v, ".10g")


def render_svg(series: Sequence[Sequence[tuple[float, float]]], style: str = "lines") -> str:
    """SVG document with the data y axis pointing up.

    The viewBox covers the data bounding box plus a 5% margin on each side. A
    bounding box that is a single point has no extent and is rejected.
    """
    if style not in STYLES:
        raise ValueError(f"unknown style {style!r}")
    pts = [p for s in series for p in s]
    if not pts:
        raise ValueError("no points to draw")
    xs = [p[0] for p in pts]
    ys = [-p[1] for p in pts]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    w, h = x1 - x0, y1 - y0
    if w == 0 and h == 0:
        raise ValueError("data has zero extent; cannot fit a viewBox")
    # a flat series still needs some extent in the other direction
    w = w or h
    h = h or w
    x0 -= MARGIN * w if x1 > x0 else w / 2
    y0 -= MARGIN * h if y1 > y0 else h / 2
    vw, vh = w * (1 + 2 * MARGIN), h * (1 + 2 * MARGIN)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="{_num(x0)} {_num(y0)} {_num(vw)} {_num(vh)}" preserveAspectRatio="none">',
    ]
    for k, s in enumerate(series):
        color = PALETTE[k % len(PALETTE)]
        coords = " ".join(f"{_num(x)},{_num(-y)}" for x, y in s)
        out.append(
            f'  <polyline fill="none" stroke="{color}" stroke-width="2" '
            f'vector-effect="non-scaling-stroke" points="{coords}"/>'
        )
        if style == "lines+points":
            r = 0.004 * max(vw, vh)
            out.extend(
                f'  <circle cx="{_num(x)}" cy="{_num(-y)}" r="{_num(r)}" fill="{color}"/>' for x, y in s
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
