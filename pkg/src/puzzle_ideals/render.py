"""ASCII and SVG pictures of tilings.

Colours follow the usual puzzle conventions: red 0-triangles, blue
1-triangles, green rhombi and dark green equivariant rhombi.  Both renderers
are pure functions of the tiling, so output is byte-for-byte reproducible.
"""

from __future__ import annotations

from math import sqrt

from .grid import UP, cell_sides
from .pieces import EQUIVARIANT

GLYPHS = {"left": "l", "right": "r", "bottom": "b", "up2": "P", "down2": "P", "hex": "P"}

FILL = {
    "zero": "#f4a6a6",
    "one": "#a6c8f4",
    "two": "#c8c8c8",
    "rhombus": "#b6e3a8",
    "equivariant": "#3f8f3a",
    "polygon": "#f6c177",
}


def _piece_glyph(tp) -> str:
    p = tp.piece
    if p == EQUIVARIANT:
        return "e"
    if p.shape in ("up", "down"):
        return str(p.values[0]) if len(set(p.values)) == 1 else "*"
    if p.shape in GLYPHS and p.shape not in ("left", "right", "bottom"):
        return (p.name or "P")[:1].upper()
    return GLYPHS[p.shape]


def _cell_owner(tiling) -> dict:
    owner = {}
    for tp in tiling.recovered:
        for c in tp.placement.cells:
            owner[c] = tp
    return owner


def render_ascii(tiling, labels: bool = False) -> str:
    """One glyph per unit triangle, rows indented into a triangle.

    Glyphs: 0/1 for monochrome triangles, l/r/b for rhombi by direction, e for
    equivariant rhombi and the piece's initial for polygon pieces.
    """
    grid = tiling.grid
    owner = _cell_owner(tiling)
    lines = []
    for r in range(1, grid.n + 1):
        row = [c for c in grid.cells if c[1] == r]
        lines.append(" " * (grid.n - r) + "".join(_piece_glyph(owner[c]) for c in row))
    if labels:
        lines.append("")
        for c in grid.cells:
            vals = "/".join(str(tiling.value(s)) for s in cell_sides(c))
            kind = "up" if c[0] == UP else "down"
            lines.append(f"{kind}({c[1]},{c[2]}) {vals}")
    return "\n".join(lines) + "\n"


def _vertices(cell, n: int, s: float):
    """Corner coordinates of a cell, apex of the big triangle at the origin."""
    kind, r, y = cell
    h = s * sqrt(3) / 2
    top_x = (y - 1) * s - (r - 1) * s / 2
    top_y = (r - 1) * h
    if kind == UP:
        return [(top_x, top_y), (top_x - s / 2, top_y + h), (top_x + s / 2, top_y + h)]
    return [(top_x, top_y), (top_x + s, top_y), (top_x + s / 2, top_y + h)]


def _fill(tp) -> str:
    p = tp.piece
    if p == EQUIVARIANT:
        return FILL["equivariant"]
    if p.shape in ("up", "down"):
        return {0: FILL["zero"], 1: FILL["one"]}.get(p.values[0], FILL["two"]) if len(set(p.values)) == 1 else FILL["two"]
    if p.shape in ("left", "right", "bottom"):
        return FILL["rhombus"]
    return FILL["polygon"]


def _fmt(v: float) -> str:
    return f"{v:.2f}".rstrip("0").rstrip(".")


def render_svg(tiling, size: float = 40.0, labels: bool = True) -> str:
    grid = tiling.grid
    n = grid.n
    pad = size / 2
    h = size * sqrt(3) / 2
    width = n * size + 2 * pad
    height = n * h + 2 * pad
    ox = pad + n * size / 2
    oy = pad
    owner = _cell_owner(tiling)

    def pt(x, y):
        return f"{_fmt(x + ox)},{_fmt(y + oy)}"

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_fmt(width)}" '
        f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        '<g stroke="none">',
    ]
    for c in grid.cells:
        poly = " ".join(pt(x, y) for x, y in _vertices(c, n, size))
        out.append(f'<polygon points="{poly}" fill="{_fill(owner[c])}"/>')
    out.append("</g>")

    # piece outlines: draw every side, thick where two pieces meet or on the border
    edges = {}
    for c in grid.cells:
        vs = _vertices(c, n, size)
        if c[0] == UP:
            segs = [(vs[0], vs[1]), (vs[0], vs[2]), (vs[1], vs[2])]   # left, right, bottom
        else:
            segs = [(vs[0], vs[2]), (vs[0], vs[1]), (vs[1], vs[2])]   # left, top, right
        for iv, seg in zip(cell_sides(c), segs):
            edges.setdefault(iv, [seg, []])[1].append(c)
    out.append('<g stroke="#333333" stroke-linecap="round">')
    for iv in sorted(edges):
        (a, b), cells = edges[iv]
        inner = len(cells) == 2 and owner[cells[0]] is owner[cells[1]]
        width_attr = "0.6" if inner else "1.8"
        dash = ' stroke-dasharray="2,2"' if inner else ""
        out.append(f'<line x1="{_fmt(a[0] + ox)}" y1="{_fmt(a[1] + oy)}" '
                   f'x2="{_fmt(b[0] + ox)}" y2="{_fmt(b[1] + oy)}" stroke-width="{width_attr}"{dash}/>')
    out.append("</g>")

    if labels:
        out.append(f'<g font-family="monospace" font-size="{_fmt(size / 4)}" '
                   'text-anchor="middle" dominant-baseline="central" fill="#000000">')
        for iv in sorted(edges):
            (a, b), _ = edges[iv]
            mx, my = (a[0] + b[0]) / 2 + ox, (a[1] + b[1]) / 2 + oy
            out.append(f'<text x="{_fmt(mx)}" y="{_fmt(my)}">{tiling.value(iv)}</text>')
        out.append("</g>")

    factors = tiling.weight_factors() if tiling.piece_set.id == "OT" else []
    if factors:
        out.append(f'<g font-family="monospace" font-size="{_fmt(size / 4)}" '
                   'text-anchor="middle" fill="#ffffff">')
        for tp, (i, j) in zip(tiling.equivariant_pieces(), factors):
            cx = sum(x for c in tp.placement.cells for x, _ in _vertices(c, n, size)) / 6 + ox
            cy = sum(y for c in tp.placement.cells for _, y in _vertices(c, n, size)) / 6 + oy
            out.append(f'<text x="{_fmt(cx)}" y="{_fmt(cy)}">({i},{j})</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_tiling(tiling, fmt: str = "ascii", **kw) -> str:
    if fmt == "ascii":
        return render_ascii(tiling, **kw)
    if fmt == "svg":
        return render_svg(tiling, **kw)
    raise ValueError(f"unknown format {fmt!r}")
