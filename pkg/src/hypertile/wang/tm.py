"""Turing machines on a one-sided tape and their compilation into seeded Wang tiles.

Layout of a compiled tiling (row 0 on top, time flowing down):

* the seed sits in the top-left corner; its north and west colours match
  nothing, so in any square it can only be placed there;
* row 0 is the seed followed by ``init`` tiles, and the south edges of row 0
  spell the starting configuration (head on cell 0, blank tape);
* row ``t`` (``t >= 1``) turns configuration ``t-1`` on its north edges into
  configuration ``t`` on its south edges.

Vertical colours are cell contents: ``s`` or ``q.s`` with the head present,
prefixed by ``|`` in column 0 (the wall).  Horizontal colours are head
signals ``q>`` (head moving east) and ``<q`` (moving west), or ``-``.  A
left move on the wall cell leaves the head where it is.  An ``n`` x ``n``
seeded square therefore exists iff the machine makes at least ``n-1`` steps.
"""

import json
from dataclasses import dataclass
from importlib import resources

from ..errors import ConsistencyError, ValidationError
from .tiles import TileSet, WangTile

NONE = "-"
SEED_N, SEED_W = "seed^", "seed<"
TOP, INIT = "top", "init"


@dataclass(frozen=True)
class TuringMachine:
    states: tuple
    alphabet: tuple
    blank: str
    start: str
    transitions: dict  # (state, symbol) -> (state, symbol, "L" | "R")
    name: str = ""

    def __post_init__(self):
        if self.start not in self.states:
            raise ValidationError(f"start state {self.start!r} is not declared")
        if self.blank not in self.alphabet:
            raise ValidationError(f"blank {self.blank!r} is not in the alphabet")
        for (q, s), (q2, s2, d) in self.transitions.items():
            if q not in self.states or q2 not in self.states:
                raise ValidationError(f"transition uses an undeclared state: {q!r} -> {q2!r}")
            if s not in self.alphabet or s2 not in self.alphabet:
                raise ValidationError(f"transition uses an undeclared symbol: {s!r} -> {s2!r}")
            if d not in ("L", "R"):
                raise ValidationError(f"direction must be L or R, got {d!r}")
        for name in tuple(self.states) + tuple(self.alphabet):
            if any(ch in name for ch in ".|<>-") or not name:
                raise ValidationError(f"state/symbol names may not contain . | < > - ({name!r})")

    @property
    def halting(self):
        return tuple(q for q in self.states if not any(k[0] == q for k in self.transitions))

    def to_dict(self):
        return {
            "name": self.name,
            "states": list(self.states),
            "alphabet": list(self.alphabet),
            "blank": self.blank,
            "start": self.start,
            "transitions": [[q, s, *self.transitions[(q, s)]] for (q, s) in sorted(self.transitions)],
        }

    @classmethod
    def from_dict(cls, d):
        try:
            trans = {}
            for q, s, q2, s2, mv in d["transitions"]:
                if (q, s) in trans:
                    raise ValidationError(f"duplicate transition for ({q}, {s})")
                trans[(q, s)] = (q2, s2, mv)
            return cls(tuple(d["states"]), tuple(d["alphabet"]), d["blank"], d["start"], trans, d.get("name", ""))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed machine file: {exc}") from exc


BUNDLED_MACHINES = ("halt", "right", "halt3", "bb2", "zigzag")


def load_machine(path):
    with open(path) as fh:
        return TuringMachine.from_dict(json.load(fh))


def bundled_machine(name):
    text = resources.files("hypertile.data.machines").joinpath(f"{name}.json").read_text()
    return TuringMachine.from_dict(json.loads(text))


@dataclass(frozen=True)
class Config:
    state: str
    head: int
    tape: tuple  # cells 0..len-1; beyond is blank


def step(tm, cfg):
    """One move, or ``None`` if the machine halts in ``cfg``."""
    sym = cfg.tape[cfg.head] if cfg.head < len(cfg.tape) else tm.blank
    move = tm.transitions.get((cfg.state, sym))
    if move is None:
        return None
    q2, s2, d = move
    tape = list(cfg.tape) + [tm.blank] * (cfg.head + 1 - len(cfg.tape))
    tape[cfg.head] = s2
    head = cfg.head + 1 if d == "R" else max(cfg.head - 1, 0)
    return Config(q2, head, tuple(tape))


def simulate(tm, max_steps, width=None):
    """Configurations from time 0 until halting or ``max_steps`` moves.

    Tapes are padded (or cut) to ``width`` cells when given.
    """
    cfg = Config(tm.start, 0, ())
    out = [cfg]
    for _ in range(max_steps):
        cfg = step(tm, cfg)
        if cfg is None:
            break
        out.append(cfg)
    if width is not None:
        out = [Config(c.state, c.head, _pad(c.tape, width, tm.blank)) for c in out]
    return out


def _pad(tape, width, blank):
    tape = tuple(tape[:width])
    return tape + (blank,) * (width - len(tape))


def _content(s, q=None, wall=False):
    c = s if q is None else f"{q}.{s}"
    return "|" + c if wall else c


def compile_tm(tm):
    """Seeded tile set emulating ``tm`` on a blank one-sided tape."""
    specs = []  # (n, e, s, w, seed)

    def add(n, e, s, w, seed=False):
        specs.append((n, e, s, w, seed))

    # plain copying tiles first so the blank filler gets the lowest id
    for wall in (False, True):
        for s in tm.alphabet:
            c = _content(s, wall=wall)
            add(c, NONE, c, NONE)
    add(SEED_N, INIT, _content(tm.blank, tm.start, wall=True), SEED_W, seed=True)
    add(TOP, INIT, tm.blank, INIT)
    for (q, s), (q2, s2, d) in sorted(tm.transitions.items()):
        for wall in (False, True):
            top = _content(s, q, wall)
            if d == "R":
                add(top, f"{q2}>", _content(s2, wall=wall), NONE)
            elif wall:
                # bounce off the wall: the head stays on cell 0
                add(top, NONE, _content(s2, q2, wall=True), NONE)
            else:
                add(top, NONE, _content(s2, wall=False), f"<{q2}")
    for q in tm.states:
        for s in tm.alphabet:
            add(s, NONE, _content(s, q), f"{q}>")
            for wall in (False, True):
                add(_content(s, wall=wall), f"<{q}", _content(s, q, wall), NONE)
    seen = {}
    for spec in specs:
        seen.setdefault(spec, None)
    tiles = [WangTile(k, n, e, s, w, seed) for k, (n, e, s, w, seed) in enumerate(seen)]
    return TileSet(tiles, name=f"tm:{tm.name}" if tm.name else "tm")


def _parse_content(color, tm):
    wall = color.startswith("|")
    body = color[1:] if wall else color
    if "." in body:
        q, s = body.split(".", 1)
        if q not in tm.states:
            raise ConsistencyError(f"unknown state in colour {color!r}")
    else:
        q, s = None, body
    if s not in tm.alphabet:
        raise ConsistencyError(f"colour {color!r} is not a tape cell of this machine")
    return wall, q, s


def decode_run(ts, rows, tm):
    """Configurations spelled by the south edges of each row of a seeded square.

    Raises :class:`ConsistencyError` if the tiling is not a valid run of ``tm``.
    """
    from .tiles import check_tiling

    if not rows or not check_tiling(ts, rows):
        raise ConsistencyError("not a valid tiling for this tile set")
    width = len(rows[0])
    if not ts[rows[0][0]].seed:
        raise ConsistencyError("the seed is not in the top-left corner")
    configs = []
    for r, row in enumerate(rows):
        heads = []
        tape = []
        for c, i in enumerate(row):
            wall, q, s = _parse_content(ts[i].south, tm)
            if wall != (c == 0):
                raise ConsistencyError(f"wall marker misplaced at row {r}, column {c}")
            if q is not None:
                heads.append((c, q))
            tape.append(s)
        if len(heads) != 1:
            raise ConsistencyError(f"row {r} has {len(heads)} heads")
        configs.append(Config(heads[0][1], heads[0][0], tuple(tape)))
    start = Config(tm.start, 0, (tm.blank,) * width)
    if configs[0] != start:
        raise ConsistencyError("row 0 is not the start configuration")
    for t in range(1, len(configs)):
        nxt = step(tm, configs[t - 1])
        if nxt is None or Config(nxt.state, nxt.head, _pad(nxt.tape, width, tm.blank)) != configs[t]:
            raise ConsistencyError(f"row {t} does not follow from row {t - 1}")
    return configs


def steps_before_halt(tm, cap):
    """Number of moves made before halting, capped at ``cap``."""
    return len(simulate(tm, cap)) - 1
