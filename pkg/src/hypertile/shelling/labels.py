"""Shortlex shellings: (dh, state, parent) labels on Cayley balls, horofunctions, atlases."""

import json
import math
from collections import deque
from dataclasses import dataclass

from ..errors import ConsistencyError, MarginError, ValidationError
from ..shift.sft import Alphabet, Patch, SftSpec

DEFAULT_R = 2


@dataclass(frozen=True)
class ShellingLabel:
    """``dh[a] = |g| - |g a|`` per generator index, acceptor state, parent generator."""

    dh: tuple
    state: int
    parent: object  # generator index, None at the basepoint

    def key(self):
        return (self.dh, self.state, -1 if self.parent is None else self.parent)


class IntegrationError(ConsistencyError):
    """A dh field whose sum around some cycle is non-zero."""

    def __init__(self, message, cycle):
        self.cycle = cycle
        super().__init__(message)


class ShellingPatch:
    """A ball around the identity with shelling labels and the horofunction ``h``."""

    def __init__(self, group, radius, vertices, labels, h):
        self.group = group
        self.radius = radius
        self.vertices = vertices
        self.labels = labels
        self.h = h

    def __repr__(self):
        return f"<ShellingPatch {self.group.name} R={self.radius} |V|={len(self.vertices)}>"

    def __contains__(self, g):
        return g in self.labels

    def parent_of(self, g):
        p = self.labels[g].parent
        return None if p is None else self.group.mul(g, (p,))

    def parent_chain(self, g):
        """``[g, P g, P^2 g, ..., e]`` as group elements."""
        out = [g]
        while self.labels[out[-1]].parent is not None:
            out.append(self.parent_of(out[-1]))
        return out

    def children(self, g):
        """Vertices of the patch whose parent is ``g``."""
        grp = self.group
        out = []
        for a in range(grp.rank):
            x = grp.mul(g, (a,))
            if x in self.labels and x != g and self.parent_of(x) == g:
                out.append(x)
        return sorted(out, key=lambda w: (len(w), w))

    @property
    def boundary_ray(self):
        """Parent letters from the shortlex-least outermost vertex down to the basepoint."""
        outer = [v for v in self.vertices if len(v) == self.radius]
        if not outer:
            return ()
        g = outer[0]
        return tuple(self.labels[x].parent for x in self.parent_chain(g)[:-1])

    def patch(self):
        """The labels as a :class:`Patch` of hashable label keys."""
        return Patch({g: lab.key() for g, lab in self.labels.items()})

    def to_dict(self):
        grp = self.group
        gens = grp.pres.generators
        return {
            "group": grp.name,
            "radius": self.radius,
            "generators": list(gens),
            "boundary_ray": [gens[a] for a in self.boundary_ray],
            "vertices": [
                {
                    "word": grp.fmt(v),
                    "dh": list(self.labels[v].dh),
                    "state": self.labels[v].state,
                    "parent": None if self.labels[v].parent is None else gens[self.labels[v].parent],
                    "h": self.h[v],
                }
                for v in self.vertices
            ],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)

    def to_dot(self):
        """Parent arrows ``g -> P g`` labelled by the parent generator."""
        grp = self.group
        lines = ["digraph shelling {", "  node [shape=circle, fontsize=9];"]
        name = {v: f"v{k}" for k, v in enumerate(self.vertices)}
        for v in self.vertices:
            lines.append(f'  {name[v]} [label="{grp.fmt(v) or "e"}\\nh={self.h[v]}"];')
        for v in self.vertices:
            p = self.labels[v].parent
            if p is not None:
                lines.append(f'  {name[v]} -> {name[self.parent_of(v)]} [label="{grp.pres.generators[p]}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def label_ball(group, radius, acc=None):
    """Shelling labels on the ball of ``radius`` around the identity."""
    if radius < 1:
        raise ValidationError("radius must be at least 1")
    acc = acc if acc is not None else group.acceptor
    vertices = list(group.ball_words(radius))
    labels = {}
    h = {}
    for g in vertices:
        d = len(g)
        dh = tuple(d - len(group.mul(g, (a,))) for a in range(group.rank))
        parent = group.inverse[g[-1]] if g else None
        state = acc.run(g)
        if state is None:
            raise ConsistencyError(f"acceptor rejects the normal form {group.fmt(g)}")
        labels[g] = ShellingLabel(dh, state, parent)
        h[g] = d
    return ShellingPatch(group, radius, vertices, labels, h)


def integrate_h(group, dh, basepoint=None, value0=0):
    """Integrate a dh field: ``h(g a) - h(g) = -dh[g][a]`` on every edge inside the domain.

    ``dh`` maps each vertex to its per-generator tuple.  Without a basepoint
    the shortlex-least vertex is pinned to ``value0``.  A non-zero cycle sum
    raises :class:`IntegrationError` carrying the offending cycle.
    """
    if not dh:
        return {}
    if basepoint is None:
        basepoint = min(dh, key=lambda w: (len(w), w))
    if basepoint not in dh:
        raise ValidationError("basepoint is not in the domain")
    h = {basepoint: value0}
    tree = {basepoint: None}
    queue = deque([basepoint])
    while queue:
        g = queue.popleft()
        for a in range(group.rank):
            x = group.mul(g, (a,))
            if x not in dh:
                continue
            val = h[g] - dh[g][a]
            if x not in h:
                h[x] = val
                tree[x] = g
                queue.append(x)
            elif h[x] != val:
                raise IntegrationError(
                    f"dh sums to {val - h[x]} around a cycle through {group.fmt(g) or 'e'} and {group.fmt(x) or 'e'}",
                    _cycle(tree, g, x),
                )
    if len(h) != len(dh):
        raise ValidationError("domain is not connected")
    return h


def _cycle(tree, g, x):
    def path(v):
        out = []
        while v is not None:
            out.append(v)
            v = tree[v]
        return out

    pg, px = path(g), path(x)
    common = set(pg) & set(px)
    up = [v for v in pg if v not in common]
    down = [v for v in px if v not in common]
    meet = next(v for v in pg if v in common)
    # g ... meet ... x, then the edge x -> g closes it
    return up + [meet] + list(reversed(down))


@dataclass
class OmegaSAtlas:
    radius: int
    sample_radius: int
    sft: SftSpec

    @property
    def charts(self):
        return self.sft.charts

    def __len__(self):
        return len(self.sft.charts)

    def to_dict(self):
        grp = self.sft.group
        return {
            "group": grp.name,
            "radius": self.radius,
            "sample_radius": self.sample_radius,
            "addresses": [grp.fmt(a) for a in self.sft.addresses],
            "charts": [[list(_jsonable(lab)) for lab in c] for c in self.sft.charts],
        }


def _jsonable(key):
    dh, state, parent = key
    return [list(dh), state, parent]


def chart_at(patch, g, addresses):
    grp = patch.group
    return tuple(patch.labels[grp.mul(g, x)].key() for x in addresses)


def omega_s_atlas(group, R=DEFAULT_R, sample_radius=None, acc=None, patch=None):
    """Every R-ball label pattern centred at ``R < |g| <= sample_radius - R``."""
    if sample_radius is None:
        sample_radius = 3 * R
    if sample_radius < 3 * R:
        raise MarginError(f"sample radius {sample_radius} is below 3R = {3 * R}")
    if patch is None or patch.radius < sample_radius:
        patch = label_ball(group, sample_radius, acc)
    addrs = group.ball_words(R)
    charts = set()
    for g in patch.vertices:
        if R < len(g) <= sample_radius - R:
            charts.add(chart_at(patch, g, addrs))
    charts = sorted(charts)
    symbols = sorted({lab for c in charts for lab in c})
    sft = SftSpec(Alphabet(tuple(symbols)), group, R, charts)
    return OmegaSAtlas(R, sample_radius, sft)


def translation_constant(group, h, t, inner=None):
    """``C`` with ``h(t x) = h(x) + C`` on the inner window, else ``None``.

    ``h`` maps the window's elements to integers.  Without ``inner`` every
    ``x`` with ``t x`` in the window is compared.
    """
    t = group.nf(t)
    if inner is None:
        pts = [x for x in h if group.mul(t, x) in h]
        if not pts:
            raise MarginError("the move leaves no overlap with the window")
    else:
        pts = list(inner)
        if any(group.mul(t, x) not in h for x in pts):
            raise MarginError("the move pushes the inner window outside the patch")
    diffs = {h[group.mul(t, x)] - h[x] for x in pts}
    return diffs.pop() if len(diffs) == 1 else None


def gplus_density(patch, delta=None):
    """Centres of ``ceil(2 delta)``-balls inside the patch that miss every maximal state."""
    grp = patch.group
    delta = grp.delta if delta is None else delta
    r = math.ceil(2 * delta)
    maximal = grp.acceptor.maximal_states() if patch.labels else set()
    ball = grp.ball_words(r)
    bad = []
    for g in patch.vertices:
        if len(g) + r > patch.radius:
            continue
        if not any(patch.labels[grp.mul(g, x)].state in maximal for x in ball):
            bad.append(g)
    return bad


def geodesic_parent_chains(patch):
    """Vertices whose parent chain is not a geodesic spelling their normal form."""
    grp = patch.group
    bad = []
    for g in patch.vertices:
        chain = patch.parent_chain(g)
        letters = [patch.labels[x].parent for x in chain[:-1]]
        if len(chain) - 1 != patch.h[g] or grp.inv(tuple(letters)) != g:
            bad.append(g)
    return bad


def atlas_rejections(patch, atlas, window_radius):
    """Centres ``g`` of off-origin sub-windows ``B(g, r)`` that the atlas rejects.

    A sub-window qualifies when it lies inside the patch and none of its
    chart centres is within the atlas radius of the basepoint.
    """
    from ..shift.sft import check_patch

    grp = patch.group
    R = atlas.radius
    r = window_radius
    ball = grp.ball_words(r)
    bad = []
    for g in patch.vertices:
        if len(g) <= r + R or len(g) + r > patch.radius:
            continue
        cells = {grp.mul(g, x) for x in ball}
        sub = Patch({c: patch.labels[c].key() for c in cells})
        if not check_patch(atlas.sft, sub):
            bad.append(g)
    return bad
