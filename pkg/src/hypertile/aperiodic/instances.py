"""Seeded random populated two-level instances for matching experiments."""

import random

from .levels import DivergenceGraph, build_levels
from .matching import match_generations


def random_two_level(patch, level, seed, max_children=16, q=2, edge_prob=0.3):
    """A random population, Delta and divergence graph on levels ``level`` and ``level + 1``.

    Returns ``(kwargs, result)`` where ``kwargs`` can be fed back to
    :func:`match_generations` and ``result`` is its output.  Populations are
    shrunk until the children count is at most ``max_children``.
    """
    rng = random.Random(seed)
    levels = {lv.index: lv for lv in build_levels(patch)}
    lo, hi = levels[level], levels[level + 1]
    delta_i = rng.choice((0, 1)) if q == 2 else 0
    pop = {v: rng.randint(1, 2) for v in lo.gplus}
    while sum(pop.values()) * q**delta_i > max_children:
        v = rng.choice([u for u in lo.gplus if pop[u] > 1] or lo.gplus)
        if pop[v] > 1:
            pop[v] -= 1
        else:
            delta_i = 0
    pop.update({u: rng.randint(1, 3) for u in hi.gplus})
    # drop some slots entirely by shrinking the upper level
    keep = [u for u in hi.gplus if rng.random() < 0.8]
    upper = type(hi)(hi.index, hi.vertices, keep)
    verts = lo.gplus
    edges = {(a, b) for i, a in enumerate(verts) for b in verts[i + 1:] if rng.random() < edge_prob}
    dg = DivergenceGraph(lo, 0, 0, edges)
    max_steps = rng.randint(0, 2)
    kwargs = dict(patch=patch, level_i=lo, level_next=upper, pop=pop, delta_i=delta_i, q=q, dg=dg,
                  max_steps=max_steps)
    return kwargs, match_generations(**kwargs)
