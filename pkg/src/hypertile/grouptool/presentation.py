"""Group presentations and the line-oriented presentation file format.

A presentation file looks like::

    # genus-2 surface group
    gens a A b B c C d D
    inv a A, b B, c C, d D
    rel [a,b][c,d]
    delta 2

Directives may also be separated by ``;`` on one line.  Relator syntax:
generator names (juxtaposed names are split greedily), ``x^k`` powers
(negative ``k`` inverts), commutators ``[u,v] = u v u^-1 v^-1`` and
relations ``u = v`` (stored as the relator ``u v^-1``).

Words are tuples of generator indices; the index order is the order of the
``gens`` directive and induces the shortlex order.
"""

from dataclasses import dataclass
from fractions import Fraction

from ..errors import ParseError, ValidationError

Word = tuple


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple
    inverse: tuple
    relators: tuple = ()
    delta: Fraction = Fraction(1)
    name: str = ""

    def __post_init__(self):
        n = len(self.generators)
        if n == 0:
            raise ValidationError("presentation has no generators")
        if len(set(self.generators)) != n:
            raise ValidationError("generator names must be distinct")
        if len(self.inverse) != n:
            raise ValidationError("inverse table has wrong length")
        for i, j in enumerate(self.inverse):
            if not 0 <= j < n or self.inverse[j] != i:
                raise ValidationError(
                    f"inverse pairing is not an involution at {self.generators[i]!r}"
                )
        for r in self.relators:
            if not r:
                raise ValidationError("empty relator")
            if any(not 0 <= x < n for x in r):
                raise ValidationError("relator uses an undeclared generator")
        if self.delta < 0:
            raise ValidationError("delta must be non-negative")

    @property
    def rank(self):
        return len(self.generators)

    def invert(self, word):
        inv = self.inverse
        return tuple(inv[x] for x in reversed(word))

    def index(self, name):
        return self.generators.index(name)

    def parse_word(self, text):
        """Parse ``text`` in relator syntax (``""`` or ``"e"`` is the identity)."""
        text = text.strip()
        if text in ("", "e", "1", "ε"):
            return ()
        return _WordParser(text, self.generators, self.inverse, 1, 1).parse_relation()

    def format_word(self, word, sep=""):
        if not word:
            return "e"
        if sep == "" and any(len(g) > 1 for g in self.generators):
            sep = " "
        return sep.join(self.generators[x] for x in word)


def free_group(rank, names=None):
    """Free group presentation on ``rank`` letters, generators ``x X y Y ...``."""
    if names is None:
        names = "abcdefghijklmnopqrstuvwxyz"[:rank]
    gens = []
    for n in names:
        gens += [n, n.upper()]
    inverse = []
    for i in range(len(gens)):
        inverse.append(i + 1 if i % 2 == 0 else i - 1)
    return GroupPresentation(tuple(gens), tuple(inverse), (), Fraction(0), f"F{rank}")


class _WordParser:
    def __init__(self, text, generators, inverse, line, col0):
        self.s = text
        self.i = 0
        self.generators = generators
        self.inverse = inverse
        self.line = line
        self.col0 = col0
        # longest names first for greedy splitting
        self.names = sorted(generators, key=len, reverse=True)

    def error(self, msg):
        raise ParseError(msg, self.line, self.col0 + self.i)

    def peek(self):
        self.skip_ws()
        return self.s[self.i] if self.i < len(self.s) else ""

    def skip_ws(self):
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1

    def invert(self, w):
        return tuple(self.inverse[x] for x in reversed(w))

    def parse_relation(self):
        lhs = self.parse_word(stop="=")
        if self.peek() == "=":
            self.i += 1
            rhs = self.parse_word(stop="")
            lhs = lhs + self.invert(rhs)
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return lhs

    def parse_word(self, stop):
        out = ()
        while True:
            c = self.peek()
            if c == "" or c in "],=" or (stop and c == stop):
                return out
            out += self.parse_factor()

    def parse_factor(self):
        c = self.peek()
        if c == "[":
            self.i += 1
            u = self.parse_word(stop=",")
            if self.peek() != ",":
                self.error("expected ',' in commutator")
            self.i += 1
            v = self.parse_word(stop="]")
            if self.peek() != "]":
                self.error("expected ']' closing commutator")
            self.i += 1
            base = u + v + self.invert(u) + self.invert(v)
        elif c == "(":
            self.i += 1
            base = self.parse_word(stop=")")
            if self.peek() != ")":
                self.error("expected ')'")
            self.i += 1
        else:
            for name in self.names:
                if self.s.startswith(name, self.i):
                    base = (self.generators.index(name),)
                    self.i += len(name)
                    break
            else:
                self.error(f"undeclared generator at {self.s[self.i:self.i + 8]!r}")
        if self.i < len(self.s) and self.s[self.i] == "^":
            self.i += 1
            j = self.i
            if self.i < len(self.s) and self.s[self.i] in "+-":
                self.i += 1
            while self.i < len(self.s) and self.s[self.i].isdigit():
                self.i += 1
            try:
                k = int(self.s[j:self.i])
            except ValueError:
                self.i = j
                self.error("bad exponent")
            if k < 0:
                base, k = self.invert(base), -k
            return base * k
        return base


def _statements(text):
    """Yield (line, column, statement) for each ';'- or newline-separated statement."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        col = 0
        for part in line.split(";"):
            stripped = part.strip()
            if stripped:
                yield lineno, col + part.index(stripped[0]) + 1, stripped
            col += len(part) + 1


def parse_presentation(text, name=""):
    """Parse presentation file contents into a validated :class:`GroupPresentation`."""
    if not text or not text.strip():
        raise ParseError("empty presentation")
    gens = None
    pairs = []
    rel_src = []
    delta = Fraction(1)
    for line, col, stmt in _statements(text):
        head, _, rest = stmt.partition(" ")
        rest_col = col + len(head) + 1
        if head == "gens":
            if gens is not None:
                raise ParseError("duplicate 'gens' directive", line, col)
            gens = rest.split()
            if not gens:
                raise ParseError("'gens' needs at least one generator", line, col)
            if len(set(gens)) != len(gens):
                raise ParseError("duplicate generator name", line, rest_col)
            for g in gens:
                if any(ch in g for ch in "[](),=^"):
                    raise ParseError(f"illegal character in generator {g!r}", line, rest_col)
        elif head == "inv":
            for chunk in rest.split(","):
                names = chunk.split()
                if len(names) not in (1, 2):
                    raise ParseError(f"bad inverse pair {chunk.strip()!r}", line, rest_col)
                if len(names) == 1:
                    names = names * 2
                pairs.append((line, rest_col, names[0], names[1]))
        elif head == "rel":
            if not rest.strip():
                raise ParseError("'rel' needs a word", line, col)
            rel_src.append((line, rest_col, rest))
        elif head == "delta":
            try:
                delta = Fraction(rest.strip())
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"bad delta {rest.strip()!r}", line, rest_col) from None
            if delta < 0:
                raise ParseError("delta must be non-negative", line, rest_col)
        elif head == "name":
            name = rest.strip()
        else:
            raise ParseError(f"unknown directive {head!r}", line, col)
    if gens is None:
        raise ParseError("missing 'gens' directive")
    inverse = [None] * len(gens)
    for line, col, x, y in pairs:
        for g in (x, y):
            if g not in gens:
                raise ParseError(f"undeclared generator {g!r} in 'inv'", line, col)
        i, j = gens.index(x), gens.index(y)
        for p, q in ((i, j), (j, i)):
            if inverse[p] is not None and inverse[p] != q:
                raise ParseError(
                    f"inverse pairing inconsistent for {gens[p]!r}", line, col
                )
            inverse[p] = q
    missing = [g for g, v in zip(gens, inverse) if v is None]
    if missing:
        raise ParseError(f"no inverse declared for {', '.join(missing)}")
    relators = []
    for line, col, src in rel_src:
        w = _WordParser(src, tuple(gens), inverse, line, col).parse_relation()
        if not w:
            raise ParseError("relator reduces to the empty word", line, col)
        relators.append(w)
    return GroupPresentation(tuple(gens), tuple(inverse), tuple(relators), delta, name)


def format_presentation(pres):
    lines = []
    if pres.name:
        lines.append(f"name {pres.name}")
    lines.append("gens " + " ".join(pres.generators))
    seen = set()
    pairs = []
    for i, j in enumerate(pres.inverse):
        if i in seen:
            continue
        seen.update((i, j))
        pairs.append(f"{pres.generators[i]} {pres.generators[j]}")
    lines.append("inv " + ", ".join(pairs))
    for r in pres.relators:
        lines.append("rel " + " ".join(pres.generators[x] for x in r))
    lines.append(f"delta {pres.delta}")
    return "\n".join(lines) + "\n"
