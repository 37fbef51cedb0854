"""Deterministic SVG figures: multiplicity shading and cover diagrams.

Every coordinate that reaches the SVG text goes through one exact
fixed-point formatter, cells are emitted in row-major order, and palettes
are fixed tables, so identical inputs produce byte-identical documents.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .chain_builder import ZonotopePath
from .degree_oracle import (
    TorusPoint2,
    boundary_polygons,
    coamoeba_degree,
    torus_degree_polygon,
)
from .errors import DimensionMismatch, PointOnBoundary
from .gale_plane import (
    BConfig,
    PlanarPathImage,
    Pushforward,
    pushforward_for,
    pushforward_path,
    zonotope_b,
)
from .line_model import AffineLine

PALETTES = {
    "amber": ("#ffffff", "#fde3b3", "#f2a74b", "#d96f1e", "#a6470f", "#6e2a08"),
    "slate": ("#ffffff", "#d7e1ea", "#a9bfd1", "#7b9cb8", "#4f7a9e", "#2b5a80"),
}

CELL_PX = 4


@dataclass(frozen=True)
class RenderOptions:
    resolution: int = 256
    palette: str = "amber"
    window: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]] = (
        (Fraction(-1), Fraction(-1)),
        (Fraction(1), Fraction(1)),
    )
    labels: bool = True

    def __post_init__(self):
        if self.resolution < 16:
            raise ValueError("resolution must be at least 16")
        (x0, y0), (x1, y1) = self.window
        if not (x1 > x0 and y1 > y0):
            raise ValueError("window must be nonempty")
        if self.palette not in PALETTES:
            raise ValueError(f"unknown palette {self.palette!r}")


def _fmt(value) -> str:
    """Exact fixed-point decimal with four places, deterministic."""
    scaled = round(Fraction(value) * 10000)
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    whole, frac = divmod(scaled, 10000)
    if frac == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:04d}".rstrip("0")


def multiplicity_grid(line: AffineLine, config: BConfig, opts: RenderOptions):
    """Coamoeba multiplicity at each cell center of the window grid.

    Returns (grid, centers) with grid[row][col] for rows from the top of
    the picture.  Centers that land on a chain edge are nudged by
    successively smaller deterministic half-steps.
    """
    (x0, y0), (x1, y1) = opts.window
    res = opts.resolution
    wx = (x1 - x0) / res
    wy = (y1 - y0) / res
    upper, lower = boundary_polygons(line, pushforward_for(line, config))

    def query(px, py):
        theta = TorusPoint2.make(px, py)
        return (torus_degree_polygon(upper, theta)
                + torus_degree_polygon(lower, theta))

    grid = []
    centers = []
    for row in range(res):
        out_row = []
        center_row = []
        cy = y1 - wy * row - wy / 2
        for col in range(res):
            cx = x0 + wx * col + wx / 2
            px, py = cx, cy
            for k in range(1, 12):
                try:
                    out_row.append(query(px, py))
                    break
                except PointOnBoundary:
                    px = cx + wx / (2 * 3**k)
                    py = cy + wy / (2 * 3**k)
            else:
                raise PointOnBoundary(f"no generic center near cell {(row, col)}")
            center_row.append((px, py))
        grid.append(out_row)
        centers.append(center_row)
    return grid, centers


def _window_transform(opts: RenderOptions):
    (x0, y0), (x1, y1) = opts.window
    width = opts.resolution * CELL_PX
    height = opts.resolution * CELL_PX

    def to_px(p):
        x = (Fraction(p[0]) - x0) / (x1 - x0) * width
        y = (y1 - Fraction(p[1])) / (y1 - y0) * height
        return x, y

    return width, height, to_px


def _polyline(points, to_px, stroke, width="2", dash=None) -> str:
    coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in (to_px(p) for p in points))
    dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
    return (f'<polyline points="{coords}" fill="none" stroke="{stroke}"'
            f' stroke-width="{width}"{dash_attr}/>')


def _translated(polygon_vertices, dx, dy):
    return [(v[0] + dx, v[1] + dy) for v in polygon_vertices]


def render_torus(line: AffineLine, config: BConfig, opts: RenderOptions = RenderOptions()) -> str:
    """Fundamental-domain picture: cells shaded by the coamoeba
    multiplicity at their centers, with the zonotope outline and the two
    boundary loops (and their torus translates) drawn on top."""
    grid, _ = multiplicity_grid(line, config, opts)
    palette = PALETTES[opts.palette]
    width, height, to_px = _window_transform(opts)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="0 0 {width} {height}" width="{width}" height="{height}">',
    ]
    res = opts.resolution
    for row in range(res):
        for col in range(res):
            mult = grid[row][col]
            color = palette[min(max(mult, 0), len(palette) - 1)]
            if color == "#ffffff":
                continue
            parts.append(
                f'<rect x="{col * CELL_PX}" y="{row * CELL_PX}" '
                f'width="{CELL_PX}" height="{CELL_PX}" fill="{color}"/>'
            )
    upper, lower = boundary_polygons(line, pushforward_for(line, config))
    for poly, color in ((upper, "#1d3a5f"), (lower, "#5f1d2e")):
        closed = list(poly.vertices) + [poly.vertices[0]]
        for dx in (-2, 0, 2):
            for dy in (-2, 0, 2):
                parts.append(_polyline(_translated(closed, dx, dy), to_px, color, "1.5"))
    zono = zonotope_b(config)
    outline = list(zono.vertices) + [zono.vertices[0]]
    for dx in (-2, 0, 2):
        for dy in (-2, 0, 2):
            parts.append(_polyline(_translated(outline, dx, dy), to_px, "#222222", "1", dash="6,4"))
    if opts.labels:
        for mult, color in enumerate(palette):
            x = 8 + mult * 56
            parts.append(f'<rect x="{x}" y="{height - 26}" width="18" height="18" '
                         f'fill="{color}" stroke="#444444" stroke-width="1"/>')
            parts.append(f'<text x="{x + 24}" y="{height - 11}" '
                         f'font-family="monospace" font-size="14">{mult}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _as_planar_image(data) -> PlanarPathImage:
    if isinstance(data, PlanarPathImage):
        return data
    if isinstance(data, ZonotopePath):
        n = len(data.ptilde[0])
        if n != 2:
            raise DimensionMismatch(
                f"path lives in dimension {n}; push it to the plane first")
        identity = Pushforward(((1, 0), (0, 1)))
        return pushforward_path(data, identity)
    raise DimensionMismatch(f"cannot render {type(data).__name__} as a cover diagram")


def render_cover(data: Union[PlanarPathImage, ZonotopePath],
                 opts: RenderOptions = RenderOptions()) -> str:
    """Universal-cover diagram of a (pushed) zonotope path: the cone's
    triangles as translucent fills (overlaps darken), the path polyline,
    and labeled lift points."""
    image = _as_planar_image(data)
    xs = [p[1][0] for p in image.points] + [0]
    ys = [p[1][1] for p in image.points] + [0]
    pad = Fraction(3, 4)
    x0, x1 = min(xs) - pad, max(xs) + pad
    y0, y1 = min(ys) - pad, max(ys) + pad
    span = max(x1 - x0, y1 - y0)
    scale = Fraction(640) / span
    width = (x1 - x0) * scale
    height = (y1 - y0) * scale

    def to_px(p):
        return (Fraction(p[0]) - x0) * scale, (y1 - Fraction(p[1])) * scale

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}" '
        f'width="{_fmt(width)}" height="{_fmt(height)}">',
    ]
    for t in image.triangles.triangles:
        a, b, c = to_px(t.a), to_px(t.b), to_px(t.c)
        pts = f"{_fmt(a[0])},{_fmt(a[1])} {_fmt(b[0])},{_fmt(b[1])} {_fmt(c[0])},{_fmt(c[1])}"
        parts.append(f'<polygon points="{pts}" fill="#31507a" fill-opacity="0.16" '
                     f'stroke="none"/>')
    path_pts = [p[1] for p in image.points] + [image.points[0][1]]
    parts.append(_polyline(path_pts, to_px, "#16324f", "2.5"))
    origin = to_px((0, 0))
    parts.append(f'<circle cx="{_fmt(origin[0])}" cy="{_fmt(origin[1])}" r="4" '
                 f'fill="#b03030"/>')
    seen = set()
    for label, p in image.points:
        key = (label, p)
        if key in seen:
            continue
        seen.add(key)
        x, y = to_px(p)
        parts.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3.5" fill="#16324f"/>')
        if opts.labels:
            parts.append(f'<text x="{_fmt(x + 6)}" y="{_fmt(y - 6)}" '
                         f'font-family="monospace" font-size="15">{label}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
