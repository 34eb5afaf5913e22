"""Lineages along matchings and their quasi-geodesic bounds."""

from dataclasses import dataclass

from ..errors import MarginError


@dataclass
class LineageReport:
    ok: bool
    step_ok: bool
    spread_ok: bool
    max_step: int
    step_bound: float
    fellow_distance: int  # measured max_n CayDist(v_0, P^n v_n)

    def to_dict(self):
        return dict(self.__dict__)


def lineage_from_matchings(start, matchings):
    """Follow villager ``start = (v, j)`` through successive level matchings.

    ``matchings[t]`` maps children ``(v, j, k)`` to slots ``(u, l)``; the
    lineage takes the matched child with the smallest ``k`` at each step and
    stops when none is matched.
    """
    v, j = start
    out = [v]
    for m in matchings:
        nxt = sorted(
            ((k, slot) for (cv, cj, k), slot in m.items() if cv == v and cj == j),
            key=lambda x: x[0],
        )
        if not nxt:
            break
        v, j = nxt[0][1]
        out.append(v)
    return out


def lineage_check(patch, lineage, delta=None):
    """Check step and spread bounds of a lineage and measure its fellow-travel distance.

    ``lineage[t]`` must lie on level ``h(lineage[0]) + t``.
    """
    group = patch.group
    delta = group.delta if delta is None else delta
    for v in lineage:
        if v not in patch:
            raise MarginError(f"lineage leaves the patch at {group.fmt(v) or 'e'}")
    base = patch.h[lineage[0]]
    for t, v in enumerate(lineage):
        if patch.h[v] != base + t:
            raise MarginError(f"lineage member {t} is on level {patch.h[v]}, expected {base + t}")
    bound = 6 * delta + 1
    steps = [group.dist(a, b) for a, b in zip(lineage, lineage[1:])]
    step_ok = all(s <= bound for s in steps)
    spread_ok = all(
        group.dist(lineage[i], lineage[j]) >= j - i
        for i in range(len(lineage))
        for j in range(i + 1, len(lineage))
    )
    fellow = 0
    for n, v in enumerate(lineage):
        x = v
        for _ in range(n):
            x = patch.parent_of(x)
        fellow = max(fellow, group.dist(lineage[0], x))
    return LineageReport(step_ok and spread_ok, step_ok, spread_ok, max(steps, default=0), float(bound), fellow)
