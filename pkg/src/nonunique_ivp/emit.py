"""CSV and SVG rendering plus all-or-nothing file output."""

from __future__ import annotations

import os
import tempfile
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence

from .integrators import PolygonalCurve
from .rhs_core import PHI2_EXTENDED_END

__all__ = [
    "format_value",
    "to_csv",
    "curve_csv",
    "sample",
    "render_figure_svg",
    "write_files",
    "SVG_STYLE",
]


def format_value(v: float, digits: Optional[int] = None) -> str:
    """Shortest round-trip decimal of ``v``, optionally rounded to ``digits`` places first."""
    v = float(v)
    if digits is not None:
        v = round(v, digits)
    return repr(v + 0.0)  # folds -0.0 into 0.0


def to_csv(header: Sequence[str], rows: Iterable[Sequence[float]], digits: Optional[int] = None) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format_value(v, digits) for v in row))
    return "\n".join(lines) + "\n"


def curve_csv(curve: PolygonalCurve, digits: Optional[int] = None) -> str:
    return to_csv(("x", "y"), curve.nodes, digits)


def sample(func, lo: float, hi: float, num: int = 201) -> list[tuple[float, float]]:
    return [(x, func(x)) for x in (lo + (hi - lo) * i / (num - 1) for i in range(num))]


# Gray levels follow the three shaded sectors; colors are a free choice.
SVG_STYLE = {
    "size": 460,
    "margin": 20,
    "upper_fill": "#f2f2f2",
    "middle_fill": "#e6e6e6",
    "lower_fill": "#d9d9d9",
    "solution_stroke": "#000000",
    "polygon_stroke": "#ff0000",
    "stroke_width": 1.2,
    "dot_radius": 1.6,
    "max_dots": 20,
}


class _Canvas:
    def __init__(self, style: Mapping):
        self.s = style["size"]
        self.m = style["margin"]

    def pt(self, x: float, y: float) -> str:
        # y axis flipped: SVG grows downwards
        return f"{self.m + x * self.s:.4f},{self.m + (1.0 - y) * self.s:.4f}"

    def path(self, pts: Iterable[tuple[float, float]]) -> str:
        return " ".join(self.pt(x, y) for x, y in pts)


def render_figure_svg(
    curve: PolygonalCurve, label: str, style: Mapping = SVG_STYLE, samples: int = 201
) -> str:
    """Draw the sectors of ``[0, 1]^2``, both exact solutions and ``curve``."""
    c = _Canvas(style)
    total = c.s + 2 * c.m
    xs = [i / (samples - 1) for i in range(samples)]
    top = [(x, 1.0) for x in xs]
    upper_par = [(x, x * x) for x in xs]
    middle_par = [(x, x * x / 2) for x in xs]
    bottom = [(x, 0.0) for x in xs]
    sectors = (
        (style["upper_fill"], top + upper_par[::-1]),
        (style["middle_fill"], upper_par + middle_par[::-1]),
        (style["lower_fill"], bottom + middle_par[::-1]),
    )
    phi1 = [(x, x * x / 4) for x in xs]
    phi2 = [(PHI2_EXTENDED_END * x, 1.5 * (PHI2_EXTENDED_END * x) ** 2) for x in xs]
    sw = style["stroke_width"]
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{total}" height="{total}" '
        f'viewBox="0 0 {total} {total}">',
    ]
    for fill, pts in sectors:
        out.append(f'  <polygon fill="{fill}" stroke="none" points="{c.path(pts)}"/>')
    out.append(
        f'  <rect x="{c.m}" y="{c.m}" width="{c.s}" height="{c.s}" fill="none" '
        f'stroke="#000000" stroke-width="0.6"/>'
    )
    out.append(
        f'  <polyline fill="none" stroke="{style["solution_stroke"]}" stroke-width="{sw}" '
        f'stroke-dasharray="6,4" points="{c.path(phi1)}"/>'
    )
    out.append(
        f'  <polyline fill="none" stroke="{style["solution_stroke"]}" stroke-width="{sw}" '
        f'points="{c.path(phi2)}"/>'
    )
    red = style["polygon_stroke"]
    out.append(
        f'  <polyline fill="none" stroke="{red}" stroke-width="{sw}" points="{c.path(curve.nodes)}"/>'
    )
    dots = curve.nodes[:-1] if curve.clipped else curve.nodes
    if len(dots) <= style["max_dots"]:
        for x, y in dots:
            cx, cy = c.pt(x, y).split(",")
            out.append(f'  <circle cx="{cx}" cy="{cy}" r="{style["dot_radius"]}" fill="{red}"/>')
    lx, ly = c.pt(0.25, 0.85).split(",")
    out.append(
        f'  <text x="{lx}" y="{ly}" fill="{red}" font-family="serif" font-size="16" '
        f'text-anchor="middle">{label}</text>'
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_files(files: Mapping[Path, str]) -> None:
    """Write every file or none of them.

    Each text goes to a temporary sibling first; targets are only replaced
    once all temporaries exist, and leftovers are removed on failure.
    """
    staged: list[tuple[str, Path]] = []
    try:
        for path, text in files.items():
            path = Path(path)
            fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
            staged.append((tmp, path))
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
            os.chmod(tmp, 0o644)
        for tmp, path in staged:
            os.replace(tmp, path)
    except BaseException:
        for tmp, _ in staged:
            if os.path.exists(tmp):
                os.unlink(tmp)
        raise
