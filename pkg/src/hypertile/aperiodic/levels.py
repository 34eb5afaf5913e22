"""Levels of h, future cones, and divergence graphs on the maximal-growth slices."""

import math
from collections import deque
from dataclasses import dataclass, field

from ..errors import MarginError, ValidationError

DEFAULT_DEPTH = 5


def _sl(w):
    return (len(w), w)


@dataclass
class LevelSet:
    index: int
    vertices: list
    gplus: list

    @property
    def empty_gplus(self):
        return not self.gplus


def future_cone(patch, g, depth):
    """``g`` and every vertex whose parent chain reaches ``g`` within ``depth`` steps."""
    if depth < 0:
        raise ValidationError("depth must be non-negative")
    return set().union(*generations(patch, g, depth))


def generations(patch, g, depth):
    """``[P^0 g, P^-1 g, ..., P^-depth g]`` as sets, truncated to the patch."""
    out = [{g}]
    for _ in range(depth):
        nxt = set()
        for v in out[-1]:
            nxt.update(patch.children(v))
        out.append(nxt)
    return out


def build_levels(patch):
    """One :class:`LevelSet` per value of ``h`` in the patch, in increasing order."""
    maximal = patch.group.acceptor.maximal_states()
    by_h = {}
    for v in patch.vertices:
        by_h.setdefault(patch.h[v], []).append(v)
    levels = []
    for i in sorted(by_h):
        vs = sorted(by_h[i], key=_sl)
        levels.append(LevelSet(i, vs, [v for v in vs if patch.labels[v].state in maximal]))
    return levels


def default_threshold(group):
    return math.ceil(2 * group.delta)


@dataclass
class DivergenceGraph:
    level: LevelSet
    depth: int
    threshold: int
    edges: set = field(default_factory=set)

    @property
    def vertices(self):
        return self.level.gplus

    def adjacency(self):
        adj = {v: [] for v in self.vertices}
        for u, v in sorted(self.edges, key=lambda e: (_sl(e[0]), _sl(e[1]))):
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def distances_from(self, src):
        adj = self.adjacency()
        dist = {src: 0}
        queue = deque([src])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        return dist

    def walk_order(self):
        """Depth-first order over the graph, shortlex tie-breaks, components in shortlex order."""
        adj = self.adjacency()
        seen = set()
        order = []
        for root in self.vertices:
            if root in seen:
                continue
            stack = [root]
            while stack:
                v = stack.pop()
                if v in seen:
                    continue
                seen.add(v)
                order.append(v)
                for w in sorted(adj[v], key=_sl, reverse=True):
                    if w not in seen:
                        stack.append(w)
        return order

    def to_dot(self, group):
        lines = ["graph divergence {", f'  label="level {self.level.index}, D={self.depth}, threshold={self.threshold}";']
        name = {v: f"v{k}" for k, v in enumerate(self.vertices)}
        for v in self.vertices:
            lines.append(f'  {name[v]} [label="{group.fmt(v) or "e"}"];')
        for u, v in sorted(self.edges, key=lambda e: (_sl(e[0]), _sl(e[1]))):
            lines.append(f"  {name[u]} -- {name[v]};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def divergence_graph(patch, level, depth=DEFAULT_DEPTH, threshold=None):
    """Join ``g1, g2`` in H+_i when their n-th generations stay within ``threshold`` for n = 0..D.

    ``level`` is a :class:`LevelSet` or a level index.
    """
    group = patch.group
    if threshold is None:
        threshold = default_threshold(group)
    if not isinstance(level, LevelSet):
        found = [lv for lv in build_levels(patch) if lv.index == level]
        if not found:
            raise ValidationError(f"no level {level} in the patch")
        level = found[0]
    if level.index + depth > patch.radius:
        raise MarginError(
            f"level {level.index} needs {depth} future generations but the patch radius is {patch.radius}"
        )
    dg = DivergenceGraph(level, depth, threshold)
    if threshold <= 0:
        return dg
    # dist(A, B) <= t  iff  A.B(ceil(t/2)) meets B.B(floor(t/2)): two small balls instead of one big one
    r_hi, r_lo = (threshold + 1) // 2, threshold // 2
    balls = {r: group.ball_words(r) for r in (r_hi, r_lo)}
    gens = {g: generations(patch, g, depth) for g in level.gplus}
    grown = {}

    def grow(g, n, r):
        if (g, n, r) not in grown:
            grown[g, n, r] = {group.mul(v, x) for v in gens[g][n] for x in balls[r]}
        return grown[g, n, r]

    def close(g1, g2, n):
        return not grow(g1, n, r_hi).isdisjoint(grow(g2, n, r_lo))

    verts = level.gplus
    for a in range(len(verts)):
        for b in range(a + 1, len(verts)):
            g1, g2 = verts[a], verts[b]
            if all(close(g1, g2, n) for n in range(depth + 1)):
                dg.edges.add((g1, g2))
    return dg


def check_connected(dg):
    """``(connected, number of components)`` on the G+ vertices of the level."""
    adj = dg.adjacency()
    seen = set()
    comps = 0
    for v in dg.vertices:
        if v in seen:
            continue
        comps += 1
        stack = [v]
        seen.add(v)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    return comps <= 1, comps
