import itertools
import json
import random

import pytest

from hypertile.errors import BudgetExceeded, ConsistencyError, ValidationError
from hypertile.wang import (
    TileSet,
    WangTile,
    bundled_machine,
    bundled_tileset,
    canonical_patch,
    check_tiling,
    compile_tm,
    decode_run,
    generate_robinson,
    robinson_tiles,
    seeded_line_sft,
    seeded_windows,
    simulate,
    steps_before_halt,
    tile_square,
    tile_torus,
)
from hypertile.wang.render import ascii_grid, svg
from hypertile.wang.robinson import glyph

ROBINSON_SHA = "09a2d9180be9fc3fe7a7267c649242f7491da21fe4278ed6945103d43df30c47"


def fits(tiles, rows, torus=False):
    """Colour check written from scratch: tiles are (n, e, s, w) tuples."""
    h, w = len(rows), len(rows[0])
    for r in range(h):
        for c in range(w):
            n, e, s, west = tiles[rows[r][c]]
            if c + 1 < w or torus:
                if e != tiles[rows[r][(c + 1) % w]][3]:
                    return False
            if r + 1 < h or torus:
                if s != tiles[rows[(r + 1) % h][c]][0]:
                    return False
    return True


def brute_tilings(tiles, w, h, torus=False):
    for vals in itertools.product(range(len(tiles)), repeat=w * h):
        rows = [list(vals[r * w:(r + 1) * w]) for r in range(h)]
        if fits(tiles, rows, torus):
            yield rows


def random_tileset(rng, n, k):
    cols = [str(c) for c in range(k)]
    return TileSet([WangTile(i, *(rng.choice(cols) for _ in range(4))) for i in range(n)])


def test_tileset_roundtrip():
    ts = bundled_tileset("checker")
    back = TileSet.from_dict(json.loads(json.dumps(ts.to_dict())))
    assert back.checksum() == ts.checksum()
    assert [t.colors for t in back.tiles] == [t.colors for t in ts.tiles]


def test_tileset_validation():
    with pytest.raises(ValidationError):
        TileSet([WangTile(1, "a", "a", "a", "a")])
    with pytest.raises(ValidationError):
        TileSet([WangTile(0, "a", "b", "a", "a")], colors=["a"])
    with pytest.raises(ValidationError):
        TileSet.from_dict({"tiles": [{"id": 0, "n": "a"}]})


def test_const_and_checker():
    const = bundled_tileset("const")
    assert tile_torus(const, 1, 1) is not None
    checker = bundled_tileset("checker")
    assert tile_torus(checker, 2, 2) is not None
    assert tile_torus(checker, 3, 2) is None
    assert tile_square(checker, 3) is not None


def test_square_and_torus_match_brute_force():
    rng = random.Random(3)
    for _ in range(60):
        ts = random_tileset(rng, rng.randint(1, 4), rng.randint(1, 3))
        tiles = [t.colors for t in ts.tiles]
        n = rng.randint(1, 3)
        got = tile_square(ts, n)
        want = next(brute_tilings(tiles, n, n), None)
        assert (got is None) == (want is None)
        if got is not None:
            assert fits(tiles, got)
        w, h = rng.randint(1, 3), rng.randint(1, 2)
        got = tile_torus(ts, w, h)
        want = next(brute_tilings(tiles, w, h, torus=True), None)
        assert (got is None) == (want is None)
        if got is not None:
            assert fits(tiles, got, torus=True)
            assert check_tiling(ts, got, torus=True)


def test_check_tiling_rejects_bad_rows():
    ts = bundled_tileset("checker")
    assert not check_tiling(ts, [])
    assert not check_tiling(ts, [[0, 0]]) or fits([t.colors for t in ts.tiles], [[0, 0]])
    assert not check_tiling(ts, [[99]])


def test_square_budget():
    ts = robinson_tiles()
    with pytest.raises(BudgetExceeded):
        tile_square(ts, 8, budget=3)


def test_simulate_halt3():
    tm = bundled_machine("halt3")
    run = simulate(tm, 10)
    assert [c.state for c in run] == ["a", "b", "c", "H"]
    assert run[-1].tape == ("1", "1", "1") and run[-1].head == 3
    assert steps_before_halt(tm, 10) == 3
    assert steps_before_halt(bundled_machine("right"), 7) == 7
    assert steps_before_halt(bundled_machine("bb2"), 50) == 4


def test_compiled_machine_squares():
    tm = bundled_machine("halt3")
    ts = compile_tm(tm)
    assert ts.seeded
    rows = tile_square(ts, 4, require_seed=True)
    assert rows is not None
    configs = decode_run(ts, rows, tm)
    assert configs == simulate(tm, 3, width=4)
    assert tile_square(ts, 5, require_seed=True) is None


@pytest.mark.parametrize("name", ["right", "zigzag", "bb2", "halt"])
def test_square_iff_enough_steps(name):
    tm = bundled_machine(name)
    ts = compile_tm(tm)
    steps = steps_before_halt(tm, 6)
    for n in range(1, 6):
        rows = tile_square(ts, n, require_seed=True)
        assert (rows is not None) == (steps >= n - 1)
        if rows is not None:
            assert decode_run(ts, rows, tm) == simulate(tm, n - 1, width=n)


def test_decode_rejects_tampering():
    tm = bundled_machine("right")
    ts = compile_tm(tm)
    rows = tile_square(ts, 3, require_seed=True)
    bad = [list(r) for r in rows]
    bad[1][1] = bad[1][0]
    with pytest.raises(ConsistencyError):
        decode_run(ts, bad, tm)
    with pytest.raises(ConsistencyError):
        decode_run(ts, rows, bundled_machine("halt3"))


def test_robinson_asset():
    ts = robinson_tiles()
    assert len(ts) == 56
    assert ts.checksum() == ROBINSON_SHA
    assert generate_robinson().checksum() == ROBINSON_SHA
    rows = canonical_patch(ts, 1, 1, 15, 15)
    assert check_tiling(ts, rows)
    assert fits([t.colors for t in ts.tiles], rows)


def test_robinson_small_tori_absent():
    ts = robinson_tiles()
    for w in range(1, 4):
        for h in range(1, 4):
            assert tile_torus(ts, w, h, budget=10**8) is None


def test_render():
    ts = robinson_tiles()
    rows = canonical_patch(ts, 1, 1, 4, 4)
    text = ascii_grid(ts, rows)
    assert text.splitlines()[0].split() == [str(i) for i in rows[0]]
    assert "legend" in text
    pic = ascii_grid(ts, rows, glyph)
    assert len(pic.splitlines()[0]) == 4
    out = svg(ts, rows)
    assert out.startswith("<svg") and out.rstrip().endswith("</svg>")
    assert out.count("<polygon") == 4 * 16


def test_seeded_windows():
    sft = seeded_line_sft()
    for n in range(1, 8):
        wins = seeded_windows(sft, n)
        # one C somewhere, Ls before, Rs after
        assert sorted(wins) == sorted(tuple([1] * k + [0] + [2] * (n - k - 1)) for k in range(n))
    # unseeded windows add only the constant L and R words
    assert len(seeded_windows(sft, 3, require_seed=False)) == 3 + 2
