"""The shortlex word acceptor: a trim DFA accepting exactly the normal forms."""

import json
from collections import deque

from ..errors import ValidationError

MAXIMAL, SUBMAXIMAL, FINITE = "maximal", "submaximal", "finite"


class WordAcceptor:
    """Partial DFA over generator indices with states ``0..n-1``.

    State 0 is initial.  Every state is accepting (the normal-form language is
    prefix-closed and the automaton is trim), but ``accepting`` is kept so
    imported automata can be checked.  ``growth_class`` and ``lam`` are
    filled in by :func:`hypertile.grouptool.growth.classify_states`.
    """

    def __init__(self, generators, transitions, accepting=None, growth_class=None, lam=None):
        self.generators = tuple(generators)
        self.transitions = [dict(t) for t in transitions]
        n = len(self.transitions)
        self.accepting = frozenset(range(n) if accepting is None else accepting)
        self.growth_class = list(growth_class) if growth_class is not None else None
        self.lam = lam
        for s, row in enumerate(self.transitions):
            for a, t in row.items():
                if not 0 <= a < len(self.generators) or not 0 <= t < n:
                    raise ValidationError(f"bad transition ({s}, {a}) -> {t}")

    @property
    def n_states(self):
        return len(self.transitions)

    initial = 0

    def run(self, word, state=0):
        """State after reading ``word`` from ``state``, or ``None`` if rejected."""
        for a in word:
            state = self.transitions[state].get(a)
            if state is None:
                return None
        return state

    def accepts(self, word):
        s = self.run(word)
        return s is not None and s in self.accepting

    def words(self, length, state=0):
        """All accepted words of exactly ``length`` letters, in shortlex order."""
        layer = [((), state)]
        for _ in range(length):
            layer = [
                (w + (a,), t)
                for w, s in layer
                for a, t in sorted(self.transitions[s].items())
            ]
        return [w for w, s in layer if s in self.accepting]

    def maximal_states(self):
        if self.growth_class is None:
            raise ValueError("acceptor has not been classified")
        return {s for s, c in enumerate(self.growth_class) if c == MAXIMAL}

    def to_dict(self):
        d = {
            "generators": list(self.generators),
            "states": self.n_states,
            "initial": 0,
            "accepting": sorted(self.accepting),
            "transitions": [
                [s, self.generators[a], t]
                for s, row in enumerate(self.transitions)
                for a, t in sorted(row.items())
            ],
        }
        if self.growth_class is not None:
            d["growth_class"] = list(self.growth_class)
        if self.lam is not None:
            d["lambda"] = self.lam
        return d

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, d):
        gens = list(d["generators"])
        n = int(d["states"])
        if d.get("initial", 0) != 0:
            raise ValidationError("initial state must be 0 in canonical numbering")
        trans = [dict() for _ in range(n)]
        for s, g, t in d["transitions"]:
            if g not in gens:
                raise ValidationError(f"unknown generator {g!r}")
            a = gens.index(g)
            if a in trans[s]:
                raise ValidationError(f"duplicate transition ({s}, {g})")
            trans[s][a] = t
        acc = cls(gens, trans, d.get("accepting"), d.get("growth_class"), d.get("lambda"))
        return acc.canonical()

    def canonical(self):
        """Renumber states in BFS order from the initial state (generator order)."""
        order = {0: 0}
        queue = deque([0])
        while queue:
            s = queue.popleft()
            for a, t in sorted(self.transitions[s].items()):
                if t not in order:
                    order[t] = len(order)
                    queue.append(t)
        trans = [None] * len(order)
        for s, new in order.items():
            trans[new] = {a: order[t] for a, t in self.transitions[s].items()}
        acc = [order[s] for s in self.accepting if s in order]
        gc = None
        if self.growth_class is not None:
            gc = [None] * len(order)
            for s, new in order.items():
                gc[new] = self.growth_class[s]
        return WordAcceptor(self.generators, trans, acc, gc, self.lam)

    def to_dot(self):
        lines = ["digraph acceptor {", "  rankdir=LR;", '  start [shape=point];', "  start -> 0;"]
        for s in range(self.n_states):
            label = str(s)
            if self.growth_class is not None:
                label += f"\\n{self.growth_class[s]}"
            lines.append(f'  {s} [shape=circle, label="{label}"];')
        for s, row in enumerate(self.transitions):
            for a, t in sorted(row.items()):
                lines.append(f'  {s} -> {t} [label="{self.generators[a]}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_acceptor(rs):
    """Minimal trim DFA accepting exactly the words avoiding every rule's lhs."""
    rs.require_confluent()
    rank = rs.rank
    lhs_set = {l for l, _ in rs.rules}
    prefixes = {()}
    for l in lhs_set:
        for k in range(1, len(l)):
            prefixes.add(l[:k])
    # prefixes that already end in a left-hand side are never reached
    dead = None

    def step(p, a):
        s = p + (a,)
        for k in range(1, len(s) + 1):
            if s[-k:] in lhs_set:
                return dead
        for k in range(len(s), -1, -1):
            if s[len(s) - k:] in prefixes:
                return s[len(s) - k:]
        return ()

    # reachable part of the Aho-Corasick automaton
    index = {(): 0}
    states = [()]
    table = []
    i = 0
    while i < len(states):
        p = states[i]
        row = {}
        for a in range(rank):
            q = step(p, a)
            if q is None:
                continue
            if q not in index:
                index[q] = len(states)
                states.append(q)
            row[a] = index[q]
        table.append(row)
        i += 1
    trans = _minimize(table, rank)
    return WordAcceptor(rs.presentation.generators, trans).canonical()


def _minimize(table, rank):
    """Moore partition refinement on a complete DFA (missing edges go to a sink)."""
    n = len(table)
    sink = n
    full = [[row.get(a, sink) for a in range(rank)] for row in table] + [[sink] * rank]
    block = [0] * n + [1]
    while True:
        sig = {}
        new_block = []
        for s in range(n + 1):
            key = (block[s],) + tuple(block[t] for t in full[s])
            new_block.append(sig.setdefault(key, len(sig)))
        if len(sig) == len(set(block)):
            block = new_block
            break
        block = new_block
    sink_block = block[sink]
    rep = {}
    for s in range(n):
        rep.setdefault(block[s], s)
    # blocks other than the sink, numbered by first occurrence
    numbering = {}
    for s in range(n):
        b = block[s]
        if b != sink_block and b not in numbering:
            numbering[b] = len(numbering)
    trans = [None] * len(numbering)
    for b, new in numbering.items():
        s = rep[b]
        trans[new] = {
            a: numbering[block[t]]
            for a, t in enumerate(full[s])
            if block[t] != sink_block
        }
    return trans
