"""Arithmetic in a group given by a confluent shortlex rewriting system."""

from functools import lru_cache
from importlib import resources

from .acceptor import build_acceptor
from .growth import classify_states
from .presentation import parse_presentation
from .rewriting import kb_complete

BUNDLED = ("z", "z2", "f2", "genus2")


class Group:
    """Elements are shortlex normal forms (tuples of generator indices)."""

    def __init__(self, rs):
        rs.require_confluent()
        self.rs = rs
        self.pres = rs.presentation
        self.rank = self.pres.rank
        self.inverse = self.pres.inverse
        self._balls = {}
        self._acceptor = None

    def __repr__(self):
        return f"<Group {self.pres.name or '?'} rank={self.rank} rules={len(self.rs.rules)}>"

    @property
    def name(self):
        return self.pres.name

    @property
    def delta(self):
        return self.pres.delta

    def nf(self, word):
        return self.rs.rewrite(tuple(word))

    def mul(self, u, v):
        return self.rs.rewrite(tuple(u) + tuple(v))

    def inv(self, w):
        return tuple(self.inverse[x] for x in reversed(w))

    def dist(self, u, v):
        return len(self.rs.rewrite(self.inv(u) + tuple(v)))

    def gen(self, name):
        return self.pres.index(name)

    def parse(self, text):
        return self.nf(self.pres.parse_word(text))

    def fmt(self, word):
        return self.pres.format_word(word)

    def ball_words(self, radius):
        """Normal forms of length <= radius in shortlex order (chart addresses)."""
        if radius not in self._balls:
            layer = [()]
            seen = {()}
            out = [()]
            for _ in range(radius):
                nxt = set()
                for v in layer:
                    for a in range(self.rank):
                        w = self.rs.rewrite(v + (a,))
                        if w not in seen:
                            seen.add(w)
                            nxt.add(w)
                layer = sorted(nxt, key=lambda w: (len(w), w))
                out.extend(layer)
            self._balls[radius] = tuple(out)
        return self._balls[radius]

    @property
    def acceptor(self):
        """Classified shortlex word acceptor (built once)."""
        if self._acceptor is None:
            self._acceptor = classify_states(build_acceptor(self.rs))
        return self._acceptor

    # Z and Z^2 conveniences; generators are assumed to be named a/A (b/B)

    def power(self, name, k):
        g = self.gen(name)
        if k < 0:
            g, k = self.inverse[g], -k
        return self.nf((g,) * k)

    def z(self, k):
        return self.power("a", k)

    def z2(self, x, y):
        return self.mul(self.power("a", x), self.power("b", y))

    def z2_coords(self, w):
        x = y = 0
        steps = {"a": (1, 0), "A": (-1, 0), "b": (0, 1), "B": (0, -1)}
        for g in w:
            dx, dy = steps[self.pres.generators[g]]
            x += dx
            y += dy
        return x, y


def group_from_text(text, name="", max_rules=None, max_len=None):
    pres = parse_presentation(text, name)
    kwargs = {}
    if max_rules is not None:
        kwargs["max_rules"] = max_rules
    if max_len is not None:
        kwargs["max_len"] = max_len
    return Group(kb_complete(pres, **kwargs))


def bundled_text(name):
    return resources.files("hypertile.data.groups").joinpath(f"{name}.grp").read_text()


@lru_cache(maxsize=None)
def load_group(name):
    """One of the bundled groups: ``z``, ``z2``, ``f2``, ``genus2``."""
    if name not in BUNDLED:
        raise KeyError(f"no bundled group {name!r}; choose from {', '.join(BUNDLED)}")
    return group_from_text(bundled_text(name), name)
