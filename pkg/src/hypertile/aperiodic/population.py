"""Populations: bounded integer villager counts following a Perron-like target density."""

import math
from fractions import Fraction

from ..errors import InfeasibleError, ValidationError
from ..grouptool.growth import state_measure

DEFAULT_N = 8
DEFAULT_RHO = 1.0


def vertex_measure(patch, levels):
    """Relative mass of each G+ vertex, mean 1 on every level.

    The mass of a vertex is the left Perron weight of its acceptor state.
    Maximal states outside the final classes carry no Perron weight; they
    get the smallest positive weight instead so every villager has a
    positive target.
    """
    mu_state = state_measure(patch.group.acceptor)
    positive = [m for m in mu_state.values() if m > 0]
    floor = min(positive) if positive else 1.0
    out = {}
    for lv in levels:
        if not lv.gplus:
            continue
        raw = {v: max(mu_state.get(patch.labels[v].state, 0.0), floor) for v in lv.gplus}
        mean = sum(raw.values()) / len(raw)
        for v, m in raw.items():
            out[v] = m / mean
    return out


def _round_half_up(x):
    return math.floor(x + Fraction(1, 2))


def populate_levels(levels, mu, rho=DEFAULT_RHO, N=DEFAULT_N, orders=None):
    """Integer populations in ``[1, N]`` on every G+ vertex.

    Each level gets an integer total next to ``rho * mu(level)``: the first
    level rounds, later levels take the ceiling when the previous realised
    density fell below ``rho`` and the floor when it rose above.  The total is
    spread along the level's vertex order (``orders[i]`` or shortlex) by
    cumulative rounding, so every run of consecutive vertices stays within 1
    of its scaled target.  Raises :class:`InfeasibleError` when some vertex
    would fall outside ``[1, N]``.
    """
    if N < 1:
        raise ValidationError("population bound N must be at least 1")
    rho = Fraction(rho).limit_denominator(10**9) if not isinstance(rho, Fraction) else rho
    pop = {}
    prev_density = None
    for lv in levels:
        if not lv.gplus:
            continue
        order = list(orders[lv.index]) if orders and lv.index in orders else list(lv.gplus)
        if sorted(order, key=lambda w: (len(w), w)) != sorted(lv.gplus, key=lambda w: (len(w), w)):
            raise ValidationError(f"order for level {lv.index} is not a permutation of its G+ vertices")
        target = {v: rho * Fraction(mu[v]).limit_denominator(10**12) for v in order}
        total_target = sum(target.values())
        if total_target <= 0:
            raise InfeasibleError(f"level {lv.index} has zero target mass")
        if prev_density is None or prev_density == rho:
            total = _round_half_up(total_target)
        elif prev_density < rho:
            total = math.ceil(total_target)
        else:
            total = math.floor(total_target)
        scale = Fraction(total) / total_target
        run = Fraction(0)
        last = 0
        for v in order:
            run += target[v] * scale
            cur = _round_half_up(run)
            p = cur - last
            last = cur
            if not 1 <= p <= N:
                raise InfeasibleError(
                    f"population {p} at level {lv.index} is outside [1, {N}] (rho={float(rho)})"
                )
            pop[v] = p
        prev_density = Fraction(total, len(order))
    return pop


def level_densities(levels, pop):
    """Realised density ``pop(H+_i) / |H+_i|`` per level index."""
    return {lv.index: Fraction(sum(pop[v] for v in lv.gplus), len(lv.gplus)) for lv in levels if lv.gplus}


def drift_ok(levels, pop, rho):
    """The drift rule: below-target density never decreases next level, above-target never increases."""
    rho = Fraction(rho).limit_denominator(10**9)
    dens = level_densities(levels, pop)
    keys = sorted(dens)
    for a, b in zip(keys, keys[1:]):
        if dens[a] < rho and dens[b] < dens[a]:
            return False
        if dens[a] > rho and dens[b] > dens[a]:
            return False
    return True


def auto_parameters(mu):
    """``(rho, N)`` with every target ``rho * mu`` at least 1 and room for rounding above the largest."""
    lo = Fraction(min(mu.values())).limit_denominator(10**6)
    rho = Fraction(1) / lo if lo < 1 else Fraction(1)
    rho = Fraction(math.ceil(rho * 100), 100)
    N = math.ceil(rho * Fraction(max(mu.values())).limit_denominator(10**6)) + 1
    return rho, N
