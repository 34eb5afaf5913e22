"""Wang tiles, tile-set files, and square/torus tiling search."""

import hashlib
import json
from dataclasses import dataclass
from importlib import resources

from ..errors import ValidationError
from ..grouptool import load_group
from ..shift.periodic import torus_point_z2
from ..shift.search import BinaryCSP, default_budget
from ..shift.sft import NnSft


@dataclass(frozen=True)
class WangTile:
    id: int
    north: str
    east: str
    south: str
    west: str
    seed: bool = False

    @property
    def colors(self):
        return (self.north, self.east, self.south, self.west)


class TileSet:
    """An ordered list of Wang tiles; tile ``i`` must have ``id == i``."""

    def __init__(self, tiles, name="", colors=None):
        tiles = list(tiles)
        for k, t in enumerate(tiles):
            if t.id != k:
                raise ValidationError(f"tile ids must be 0..n-1 in order (tile {k} has id {t.id})")
        used = sorted({c for t in tiles for c in t.colors})
        if colors is not None:
            colors = list(colors)
            extra = set(used) - set(colors)
            if extra:
                raise ValidationError(f"colors not declared in the alphabet: {sorted(extra)}")
        self.tiles = tiles
        self.name = name
        self.colors = colors if colors is not None else used

    def __len__(self):
        return len(self.tiles)

    def __getitem__(self, i):
        return self.tiles[i]

    def __repr__(self):
        return f"<TileSet {self.name or '?'} tiles={len(self.tiles)} seeded={self.seeded}>"

    @property
    def seeded(self):
        return any(t.seed for t in self.tiles)

    @property
    def seeds(self):
        return [t.id for t in self.tiles if t.seed]

    def horizontal_pairs(self):
        """``(i, j)`` with tile ``j`` allowed directly east of tile ``i``."""
        by_west = {}
        for t in self.tiles:
            by_west.setdefault(t.west, []).append(t.id)
        return {(t.id, j) for t in self.tiles for j in by_west.get(t.east, ())}

    def vertical_pairs(self):
        """``(i, j)`` with tile ``j`` allowed directly south of tile ``i``."""
        by_north = {}
        for t in self.tiles:
            by_north.setdefault(t.north, []).append(t.id)
        return {(t.id, j) for t in self.tiles for j in by_north.get(t.south, ())}

    def to_dict(self):
        return {
            "name": self.name,
            "colors": list(self.colors),
            "tiles": [
                {"id": t.id, "n": t.north, "e": t.east, "s": t.south, "w": t.west, "seed": t.seed}
                for t in self.tiles
            ],
        }

    def checksum(self):
        """sha256 of the canonical tile data (name excluded)."""
        d = self.to_dict()
        d.pop("name")
        blob = json.dumps(d, sort_keys=True, separators=(",", ":")).encode()
        return hashlib.sha256(blob).hexdigest()

    @classmethod
    def from_dict(cls, d):
        try:
            tiles = [
                WangTile(int(t["id"]), str(t["n"]), str(t["e"]), str(t["s"]), str(t["w"]), bool(t.get("seed", False)))
                for t in d["tiles"]
            ]
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed tile entry: {exc}") from exc
        return cls(tiles, d.get("name", ""), d.get("colors"))


def load_tileset(path):
    with open(path) as fh:
        return TileSet.from_dict(json.load(fh))


def bundled_tileset(name):
    text = resources.files("hypertile.data.tiles").joinpath(f"{name}.json").read_text()
    return TileSet.from_dict(json.loads(text))


def tileset_to_nn(ts):
    """The tile set as a nearest-neighbour SFT on Z^2 (``a`` = east, ``b`` = north)."""
    z2 = load_group("z2")
    east = ts.horizontal_pairs()
    # tile j north of tile i  <=>  i south of j
    north = {(i, j) for (j, i) in ts.vertical_pairs()}
    return NnSft(len(ts), z2, {"a": east, "b": north}, names=[str(t.id) for t in ts.tiles])


def _square_csp(ts, w, h):
    csp = BinaryCSP.uniform(w * h, len(ts))
    east = ts.horizontal_pairs()
    south = ts.vertical_pairs()
    for r in range(h):
        for c in range(w):
            if c + 1 < w:
                csp.add(r * w + c, r * w + c + 1, east)
            if r + 1 < h:
                csp.add(r * w + c, (r + 1) * w + c, south)
    return csp


def tile_square(ts, n, require_seed=False, budget=None):
    """First ``n`` x ``n`` tiling (``rows[r][c]``, row 0 on top), or ``None``.

    With ``require_seed`` the search tries seed placements in row-major order
    and returns the first success; each placement gets its own budget.
    """
    if n < 1:
        raise ValidationError("n must be at least 1")
    if require_seed and not ts.seeded:
        raise ValidationError("require_seed on a tile set without seed tiles")
    if budget is None:
        budget = default_budget()
    csp = _square_csp(ts, n, n)
    if not require_seed:
        sol = csp.solve(budget=budget)
        return None if sol is None else [sol[r * n:(r + 1) * n] for r in range(n)]
    seed_mask = 0
    for i in ts.seeds:
        seed_mask |= 1 << i
    base = list(csp.domains)
    for cell in range(n * n):
        csp.domains = list(base)
        csp.domains[cell] &= seed_mask
        sol = csp.solve(budget=budget)
        if sol is not None:
            csp.domains = base
            return [sol[r * n:(r + 1) * n] for r in range(n)]
    csp.domains = base
    return None


def tile_torus(ts, w, h, budget=None):
    """First ``w`` x ``h`` toroidal tiling (``rows[r][c]``, row 0 on top), or ``None``."""
    rows = torus_point_z2(tileset_to_nn(ts), w, h, budget=budget)
    if rows is None:
        return None
    return rows[::-1]


def check_tiling(ts, rows, torus=False):
    """Independent colour re-check of every adjacency (wrapping if ``torus``)."""
    h = len(rows)
    if h == 0:
        return False
    w = len(rows[0])
    for r in range(h):
        if len(rows[r]) != w:
            return False
        for c in range(w):
            i = rows[r][c]
            if not 0 <= i < len(ts):
                return False
            t = ts[i]
            if c + 1 < w or torus:
                if t.east != ts[rows[r][(c + 1) % w]].west:
                    return False
            if r + 1 < h or torus:
                if t.south != ts[rows[(r + 1) % h][c]].north:
                    return False
    return True
