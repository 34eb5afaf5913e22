"""Wang form of Robinson's cross-and-arm tiles, generated from the 2-adic picture.

In the canonical Robinson tiling a cell ``(x, y)`` (both non-zero) is

* a *cross* when ``v2(x) == v2(y)``; its level is that common valuation,
* a horizontal *arm* when ``v2(y) > v2(x)``, a vertical arm otherwise.

Along every row and column the principal arrows point away from the nearest
cross, so arms from neighbouring crosses meet head-on at the midpoints, which
are exactly the perpendicular arms.  A level-``n`` cross is a corner of a
square whose centre lies diagonally ``2**n`` away in the quadrant it faces;
square sides of level ``n`` run along rows and columns of valuation ``n``.

Each edge colour records the arrow crossing it, whether a square side runs
through it (and on which side the square's inside lies), and the parity of
the edge position.  The parity part plays the role of Robinson's corner
bumps: it pins the level-0 crosses to the odd/odd sublattice.

The tile set is the set of all cell types of the canonical tiling; it
stabilises at 56 tiles and is shipped as ``data/tiles/robinson.json``.
"""

from .tiles import TileSet, WangTile, bundled_tileset

ASSET_VERSION = 1
EXTRACT_LEVELS = 7


def v2(n):
    n = abs(n)
    if n == 0:
        raise ValueError("v2(0) is infinite")
    k = 0
    while n % 2 == 0:
        n //= 2
        k += 1
    return k


def _toward(c, n):
    """Sign from ``c`` (valuation ``n``) toward the centre of its level-``n`` square."""
    return 1 if (c >> n) % 4 == 1 else -1


def _arrow(pos, m):
    """+1 if the arrow across the edge ``(pos, pos+1)`` on a line of valuation ``m`` points up."""
    step = 2 ** m
    # crosses sit at odd multiples of 2**m; find the one nearest the edge midpoint
    twice = 2 * pos + 1
    k = twice // (4 * step)
    best = None
    for kk in (k - 1, k, k + 1):
        c = (2 * kk + 1) * step
        d = abs(twice - 2 * c)
        if best is None or d < best[0]:
            best = (d, c)
    return 1 if 2 * best[1] < twice else -1


def _side(a, b):
    """Square side along the line ``a`` across the edge between ``b`` and ``b + 1``.

    Returns the inside direction (+1/-1 across the line) or 0 when no side of
    a square of level ``v2(a)`` covers that edge.
    """
    n = v2(a)
    r = 2 ** n
    # centres c with v2(c) == n + 1 and [b, b+1] inside [c - r, c + r]
    for c in range(b + 1 - r, b + r + 1):
        if c and v2(c) == n + 1:
            return _toward(a, n)
    return 0


def _h_color(arrow, side, parity):
    return (">" if arrow > 0 else "<") + {1: "N", -1: "S", 0: "."}[side] + str(parity)


def _v_color(arrow, side, parity):
    return ("^" if arrow > 0 else "v") + {1: "E", -1: "W", 0: "."}[side] + str(parity)


def cell_colors(x, y):
    """``(north, east, south, west)`` colours of the canonical tiling at ``(x, y)``; y grows north."""
    mx, my = v2(x), v2(y)
    east = _h_color(_arrow(x, my), _side(y, x), x % 2)
    west = _h_color(_arrow(x - 1, my), _side(y, x - 1), (x - 1) % 2)
    north = _v_color(_arrow(y, mx), _side(x, y), y % 2)
    south = _v_color(_arrow(y - 1, mx), _side(x, y - 1), (y - 1) % 2)
    return north, east, south, west


def kind(x, y):
    mx, my = v2(x), v2(y)
    if mx == my:
        return "cross"
    return "h" if my > mx else "v"


def generate_robinson(levels=EXTRACT_LEVELS):
    """All cell types of the canonical tiling on ``[1, 2**levels - 1]**2``, sorted."""
    types = set()
    for x in range(1, 2 ** levels):
        for y in range(1, 2 ** levels):
            types.add(cell_colors(x, y))
    tiles = [WangTile(k, *c) for k, c in enumerate(sorted(types))]
    return TileSet(tiles, name=f"robinson-v{ASSET_VERSION}")


def canonical_patch(ts, x0, y0, w, h):
    """The canonical tiling on a window as ``rows[r][c]`` (row 0 on top) of tile ids."""
    index = {t.colors: t.id for t in ts.tiles}
    rows = []
    for r in range(h):
        y = y0 + h - 1 - r
        rows.append([index[cell_colors(x0 + c, y)] for c in range(w)])
    return rows


def robinson_tiles():
    """The shipped 56-tile set."""
    return bundled_tileset("robinson")


def glyph(tile):
    """One-character picture: ``+`` cross, ``-``/``|`` arms."""
    n, e, s, w = tile.colors
    horizontal_out = e[0] == ">" and w[0] == "<"
    vertical_out = n[0] == "^" and s[0] == "v"
    if horizontal_out and vertical_out:
        return "+"
    if e[0] == w[0]:
        return "-"
    return "|"
