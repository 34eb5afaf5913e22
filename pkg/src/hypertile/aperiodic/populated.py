"""Populated shellings: the full label tuple and finite-window aperiodicity reports."""

import json
from fractions import Fraction
from dataclasses import dataclass, field

from ..errors import MarginError, ValidationError
from ..shelling.labels import translation_constant
from .delta import DeltaSequence, beatty_differences
from .levels import DEFAULT_DEPTH, build_levels, divergence_graph
from .matching import DIV_STEPS, match_generations
from .population import DEFAULT_N, DEFAULT_RHO, auto_parameters, populate_levels, vertex_measure


@dataclass
class PopulatedPatch:
    base: object  # ShellingPatch
    delta: DeltaSequence
    pop: dict
    N: int
    matchings: dict = field(default_factory=dict)  # level i -> {child: slot}
    params: dict = field(default_factory=dict)

    def matching_label(self, g):
        """Matched children of ``g`` as ``((j, k), (g^-1 u, l))``, invariant under translation."""
        grp = self.base.group
        m = self.matchings.get(self.base.h[g], {})
        out = []
        for (v, j, k), (u, l) in m.items():
            if v == g:
                out.append(((j, k), (grp.mul(grp.inv(g), u), l)))
        return tuple(sorted(out))

    def label(self, g, with_delta=True):
        """``(dh, state, parent, pop, Delta, m)`` at ``g``; ``pop`` is 0 off G+."""
        shell = self.base.labels[g].key()
        i = self.base.h[g]
        d = self.delta.values.get(i) if with_delta else None
        return shell + (self.pop.get(g, 0), d, self.matching_label(g))

    def to_dict(self):
        grp = self.base.group
        return {
            "group": grp.name,
            "radius": self.base.radius,
            "params": self.params,
            "N": self.N,
            "delta": self.delta.to_dict(),
            "pop": {grp.fmt(v) or "e": p for v, p in sorted(self.pop.items(), key=lambda x: (len(x[0]), x[0]))},
            "matching": [
                [i, grp.fmt(v) or "e", j, k, grp.fmt(u) or "e", l]
                for i in sorted(self.matchings)
                for (v, j, k), (u, l) in sorted(
                    self.matchings[i].items(), key=lambda x: ((len(x[0][0]), x[0][0]), x[0][1:])
                )
            ],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)


def populate_patch(patch, delta, depth=DEFAULT_DEPTH, rho=DEFAULT_RHO, N=DEFAULT_N, q=None,
                   threshold=None, max_steps=DIV_STEPS, mu=None):
    """Populations, divergence graphs and level-to-level matchings on a shelling ball.

    ``rho`` and ``N`` may be ``"auto"`` to pick the smallest density that
    gives every villager site a target of at least one, and a bound above it.

    ``delta`` is a :class:`DeltaSequence`; its ``q`` is used unless ``q`` is
    given.  Levels without ``depth`` future generations inside the ball get
    populations but no matching.
    """
    q = delta.q if q is None else q
    levels = build_levels(patch)
    dgs = {}
    for lv in levels:
        if lv.index + depth <= patch.radius and lv.gplus:
            dgs[lv.index] = divergence_graph(patch, lv, depth, threshold)
    orders = {i: dg.walk_order() for i, dg in dgs.items()}
    if mu is None:
        mu = vertex_measure(patch, levels)
    if rho == "auto" or N == "auto":
        a_rho, a_N = auto_parameters(mu)
        rho = a_rho if rho == "auto" else rho
        N = a_N if N == "auto" else N
    pop = populate_levels(levels, mu, rho, N, orders)
    by_index = {lv.index: lv for lv in levels}
    matchings = {}
    results = {}
    for i, dg in dgs.items():
        if i + 1 not in by_index or i not in delta.values:
            continue
        res = match_generations(patch, by_index[i], by_index[i + 1], pop, delta[i], q, dg, max_steps)
        matchings[i] = res.matching
        results[i] = res
    params = {
        "depth": depth,
        "threshold": next(iter(dgs.values())).threshold if dgs else threshold,
        "q": q,
        "N": N,
        "rho": float(Fraction(rho)),
        "max_steps": max_steps,
    }
    pp = PopulatedPatch(patch, delta, pop, N, matchings, params)
    return pp, results


def sturmian_delta(alpha, indices, q=2):
    """A Delta sequence from an explicit ``alpha`` (no growth-rate check)."""
    return DeltaSequence(alpha, q, beatty_differences(alpha, list(indices)))


@dataclass
class MoveReport:
    move: tuple
    candidate: bool  # every label except Delta preserved on the compared window
    C: object  # translation constant, None if h is not shifted uniformly
    contradiction_level: object  # first level i with Delta_{i+C} != Delta_i, or None
    delta_preserved: bool

    @property
    def stabilizer(self):
        """Full-tuple preservation, Delta included."""
        return self.candidate and self.delta_preserved


def window_aperiodicity(pp, moves, window=None, inner=None):
    """For each move, whether it preserves the labels and what Delta says about it.

    Labels are compared on ``inner`` (which ``t`` must keep inside ``window``)
    or, without ``inner``, on every point of ``window`` whose image stays in it.
    """
    grp = pp.base.group
    window = set(pp.base.vertices if window is None else window)
    out = []
    for t in moves:
        t = grp.nf(t)
        if inner is None:
            pts = [x for x in window if grp.mul(t, x) in window]
            if not pts:
                raise MarginError(f"move {grp.fmt(t) or 'e'} leaves no overlap with the window")
        else:
            pts = list(inner)
            if any(x not in window or grp.mul(t, x) not in window for x in pts):
                raise MarginError(f"move {grp.fmt(t) or 'e'} pushes the inner window outside")
        pts.sort(key=lambda w: (len(w), w))
        cand = all(pp.label(grp.mul(t, x), False) == pp.label(x, False) for x in pts)
        C = translation_constant(grp, {x: pp.base.h[x] for x in window}, t, inner=pts)
        contradiction = None
        if C is not None:
            levels = sorted({pp.base.h[x] for x in pts})
            for i in levels:
                a, b = pp.delta.values.get(i), pp.delta.values.get(i + C)
                if a is None or b is None:
                    raise ValidationError(f"Delta is not defined on levels {i} and {i + C}")
                if a != b:
                    contradiction = i
                    break
        delta_ok = C is not None and contradiction is None
        out.append(MoveReport(t, cand, C, contradiction, delta_ok))
    return out


def translate_matching(patch, step, pop, levels=None):
    """The matching that sends each villager's first child straight up along ``step``.

    Child ``(v, j, 0)`` takes slot ``(v*step, j)`` whenever ``v*step`` is a
    child of ``v`` in the patch with at least ``j + 1`` villagers.  Because the
    rule only looks at relative positions it commutes with translations, which
    makes it a convenient constructed matching for window checks.
    """
    grp = patch.group
    step = grp.nf(step)
    out = {}
    for v, p in pop.items():
        u = grp.mul(v, step)
        if u not in patch or patch.parent_of(u) != v:
            continue
        lvl = out.setdefault(patch.h[v], {})
        for j in range(min(p, pop.get(u, 0))):
            lvl[(v, j, 0)] = (u, j)
    return out
