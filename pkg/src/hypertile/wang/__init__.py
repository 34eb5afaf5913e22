"""Wang tiles: Turing-machine compilation, the Robinson set, square and torus search."""

from .robinson import canonical_patch, generate_robinson, robinson_tiles
from .tiles import (
    TileSet,
    WangTile,
    bundled_tileset,
    check_tiling,
    load_tileset,
    tile_square,
    tile_torus,
    tileset_to_nn,
)
from .tm import (
    BUNDLED_MACHINES,
    Config,
    TuringMachine,
    bundled_machine,
    compile_tm,
    decode_run,
    load_machine,
    simulate,
    steps_before_halt,
)
from .line import seeded_line_sft, seeded_windows, window_patch

__all__ = [
    "BUNDLED_MACHINES", "Config", "TileSet", "TuringMachine", "WangTile", "bundled_machine",
    "bundled_tileset", "canonical_patch", "check_tiling", "compile_tm", "decode_run",
    "generate_robinson", "load_machine", "load_tileset", "robinson_tiles", "seeded_line_sft",
    "seeded_windows", "simulate", "window_patch", "steps_before_halt", "tile_square", "tile_torus", "tileset_to_nn",
]
