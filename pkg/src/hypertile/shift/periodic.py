"""Periodic points of nearest-neighbour SFTs on Z and Z^2, and window stabilizers."""

from collections import deque

from ..errors import MarginError, ValidationError
from .search import BinaryCSP, default_budget


def _successors(nn, gen):
    succ = [[] for _ in range(nn.n_tiles)]
    for i, j in sorted(nn.allowed(gen)):
        succ[i].append(j)
    return succ


def z_periodic_point(nn, gen="a"):
    """Shortest cycle in the tile digraph across ``gen``: ``(period, tiles)`` or ``None``.

    A bi-infinite valid configuration exists iff the digraph has a cycle, and
    any cycle repeated forever is a periodic one.  Ties between cycles of the
    same length go to the lexicographically least tile word.
    """
    succ = _successors(nn, gen)
    best = None
    for start in range(nn.n_tiles):
        # BFS from start; the first time we come back to start closes a shortest cycle
        prev = {}
        queue = deque([start])
        seen = set()
        found = None
        while queue and found is None:
            v = queue.popleft()
            for w in succ[v]:
                if w == start:
                    found = v
                    break
                if w not in seen:
                    seen.add(w)
                    prev[w] = v
                    queue.append(w)
        if found is None:
            continue
        path = [found]
        while path[-1] != start:
            path.append(prev[path[-1]])
        word = tuple(reversed(path))
        # rotate to the least rotation so the answer does not depend on the start
        word = min(word[k:] + word[:k] for k in range(len(word)))
        cand = (len(word), word)
        if best is None or cand < best:
            best = cand
    return best


def is_periodic_word(nn, word, gen="a"):
    """Check that ``word`` repeated forever is a valid configuration."""
    if not word:
        return False
    pairs = nn.allowed(gen)
    n = len(word)
    return all((word[k], word[(k + 1) % n]) in pairs for k in range(n))


def torus_point_z2(nn, w, h, budget=None, east="a", north="b"):
    """A ``w`` x ``h`` toroidal tiling as ``rows[y][x]``, or ``None``.

    Cell ``(x, y)`` has its east neighbour at ``(x+1, y)`` and its north
    neighbour at ``(x, y+1)``, both modulo the torus size.
    """
    if w < 1 or h < 1:
        raise ValidationError("torus sides must be at least 1")
    csp = BinaryCSP.uniform(w * h, nn.n_tiles)
    east_pairs = nn.allowed(east)
    north_pairs = nn.allowed(north)

    def idx(x, y):
        return (y % h) * w + (x % w)

    for y in range(h):
        for x in range(w):
            csp.add(idx(x, y), idx(x + 1, y), east_pairs)
            csp.add(idx(x, y), idx(x, y + 1), north_pairs)
    sol = csp.solve(budget=budget if budget is not None else default_budget())
    if sol is None:
        return None
    return [[sol[idx(x, y)] for x in range(w)] for y in range(h)]


def check_torus(nn, rows, east="a", north="b"):
    """Independent re-check of every wrapped adjacency."""
    h = len(rows)
    w = len(rows[0])
    ep, np_ = nn.allowed(east), nn.allowed(north)
    for y in range(h):
        for x in range(w):
            if (rows[y][x], rows[y][(x + 1) % w]) not in ep:
                return False
            if (rows[y][x], rows[(y + 1) % h][x]) not in np_:
                return False
    return True


def inner_domain(group, domain, margin):
    """Elements whose ``margin``-ball lies inside ``domain``."""
    domain = frozenset(domain)
    ball = group.ball_words(margin)
    return frozenset(g for g in domain if all(group.mul(g, x) in domain for x in ball))


def window_stabilizer(patch, moves, group, inner=None):
    """Moves ``t`` with ``label(t x) == label(x)`` wherever both ends are compared.

    Without ``inner`` the comparison runs over every ``x`` with ``t x`` still in
    the window.  With an explicit ``inner`` set, ``t`` must map it into the
    window (else :class:`MarginError`) and only ``inner`` is compared.
    """
    labels = patch.labels
    domain = patch.domain
    kept = []
    for t in moves:
        t = group.nf(t)
        if inner is None:
            pts = [x for x in domain if group.mul(t, x) in domain]
            if not pts:
                raise MarginError(f"move {group.fmt(t) or 'e'} leaves no overlap with the window")
        else:
            pts = list(inner)
            if any(group.mul(t, x) not in domain for x in pts):
                raise MarginError(f"move {group.fmt(t) or 'e'} pushes the inner window outside the patch")
        if all(labels[group.mul(t, x)] == labels[x] for x in pts):
            kept.append(t)
    return kept
