"""ASCII and SVG pictures of square tilings (``rows[r][c]``, row 0 on top)."""

import hashlib
from xml.sax.saxutils import escape

CELL = 40


def ascii_grid(ts, rows, glyph=None):
    """Tile ids (or ``glyph(tile)`` characters) in a grid, followed by a colour legend."""
    lines = []
    if glyph is None:
        width = max(len(str(i)) for row in rows for i in row)
        for row in rows:
            lines.append(" ".join(str(i).rjust(width) for i in row))
    else:
        for row in rows:
            lines.append("".join(glyph(ts[i]) for i in row))
    lines.append("")
    lines.append("legend: id  N E S W")
    for i in sorted({i for row in rows for i in row}):
        t = ts[i]
        mark = "  (seed)" if t.seed else ""
        lines.append(f"  {i}: {t.north} {t.east} {t.south} {t.west}{mark}")
    return "\n".join(lines) + "\n"


def color_of(name):
    """Stable fill colour for an edge colour name."""
    h = hashlib.sha256(name.encode()).hexdigest()
    return "#" + h[:6]


def svg(ts, rows, cell=CELL):
    """Each tile drawn as four triangles coloured by its edge colours, with a legend."""
    h = len(rows)
    w = len(rows[0]) if rows else 0
    used = sorted({c for row in rows for i in row for c in ts[i].colors})
    legend_h = 16 * (len(used) + 2)
    width, height = w * cell, h * cell + legend_h
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">'
    ]
    for r, row in enumerate(rows):
        for c, i in enumerate(row):
            t = ts[i]
            x0, y0 = c * cell, r * cell
            x1, y1 = x0 + cell, y0 + cell
            cx, cy = x0 + cell / 2, y0 + cell / 2
            tris = [
                (t.north, f"{x0},{y0} {x1},{y0} {cx},{cy}"),
                (t.east, f"{x1},{y0} {x1},{y1} {cx},{cy}"),
                (t.south, f"{x0},{y1} {x1},{y1} {cx},{cy}"),
                (t.west, f"{x0},{y0} {x0},{y1} {cx},{cy}"),
            ]
            for col, pts in tris:
                out.append(f'<polygon points="{pts}" fill="{color_of(col)}" stroke="#333" stroke-width="0.5"/>')
            if t.seed:
                out.append(f'<circle cx="{cx}" cy="{cy}" r="{cell / 6}" fill="white" stroke="black"/>')
    y = h * cell + 14
    out.append(f'<text x="2" y="{y}" font-size="11" font-family="monospace">legend</text>')
    for k, col in enumerate(used):
        yy = y + 16 * (k + 1) - 2
        out.append(f'<rect x="2" y="{yy - 10}" width="10" height="10" fill="{color_of(col)}"/>')
        out.append(f'<text x="16" y="{yy}" font-size="11" font-family="monospace">{escape(col)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
