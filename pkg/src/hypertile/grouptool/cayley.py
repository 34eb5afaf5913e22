"""Balls in the Cayley graph, built from shortlex normal forms."""

from dataclasses import dataclass, field

from ..errors import BudgetExceeded

DEFAULT_MAX_VERTICES = 2_000_000


@dataclass
class CayleyBall:
    """Ball of ``radius`` around ``center``.

    ``vertices`` are normal forms in BFS (then shortlex) order and ``dist``
    gives the graph distance from the centre.  ``edges[v][a]`` is the normal
    form of ``v a`` when it lies in the ball.
    """

    center: tuple
    radius: int
    vertices: list
    dist: dict
    edges: dict = field(repr=False)

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, v):
        return v in self.dist

    def sphere(self, k):
        return [v for v in self.vertices if self.dist[v] == k]

    def sphere_sizes(self):
        sizes = [0] * (self.radius + 1)
        for v in self.vertices:
            sizes[self.dist[v]] += 1
        return sizes

    def edge_list(self):
        return [(v, a, w) for v in self.vertices for a, w in sorted(self.edges[v].items())]


def ball(rs, radius, center=(), max_vertices=DEFAULT_MAX_VERTICES):
    """Ball of the given radius; vertices are the normal forms within reach."""
    rs.require_confluent()
    if radius < 0:
        raise ValueError("radius must be non-negative")
    rank = rs.rank
    center = rs.rewrite(tuple(center))
    dist = {center: 0}
    order = [center]
    frontier = [center]
    for k in range(1, radius + 1):
        nxt = []
        for v in frontier:
            for a in range(rank):
                w = rs.rewrite(v + (a,))
                if w not in dist:
                    dist[w] = k
                    nxt.append(w)
        if len(dist) > max_vertices:
            raise BudgetExceeded(
                f"ball of radius {radius} exceeds {max_vertices} vertices", nodes=len(dist)
            )
        nxt.sort(key=lambda w: (len(w), w))
        order.extend(nxt)
        frontier = nxt
    edges = {}
    for v in order:
        out = {}
        for a in range(rank):
            w = rs.rewrite(v + (a,))
            if w in dist:
                out[a] = w
        edges[v] = out
    return CayleyBall(center, radius, order, dist, edges)


def word_length(rs, word):
    """Geodesic length of ``word`` (normal forms are geodesic)."""
    return len(rs.rewrite(tuple(word)))


def cay_dist(rs, u, v):
    """Cayley-graph distance between the elements represented by ``u`` and ``v``."""
    inv = rs.presentation.inverse
    return len(rs.rewrite(tuple(inv[x] for x in reversed(u)) + tuple(v)))
