"""Parent-child matching between consecutive populated levels, with Hall certificates."""

from collections import deque

from dataclasses import dataclass

DIV_STEPS = 3


@dataclass
class MatchResult:
    children: list  # (v, j, k)
    slots: list  # (u, l)
    matching: dict  # child -> slot
    hall_violator: object  # list of children with too few admissible slots, or None
    imbalance: int  # number of slots minus number of children

    @property
    def saturated(self):
        return len(self.matching) == len(self.children)

    @property
    def perfect(self):
        return self.saturated and self.imbalance == 0


def bipartite_instance(children, slots, admissible):
    """Adjacency lists ``child index -> [slot index]`` in slot order."""
    return [[s for s, slot in enumerate(slots) if admissible(c, slot)] for c in children]


def max_matching(adj, n_right):
    """Maximum bipartite matching by augmenting paths; returns ``match_left`` (slot or -1)."""
    match_left = [-1] * len(adj)
    match_right = [-1] * n_right
    for root in range(len(adj)):
        # iterative DFS for an augmenting path from root
        parent = {}
        stack = [(root, iter(adj[root]))]
        visited = set()
        end = None
        while stack and end is None:
            u, it = stack[-1]
            for s in it:
                if s in visited:
                    continue
                visited.add(s)
                parent[s] = u
                if match_right[s] == -1:
                    end = s
                    break
                stack.append((match_right[s], iter(adj[match_right[s]])))
                break
            else:
                stack.pop()
        if end is None:
            continue
        s = end
        while True:
            u = parent[s]
            prev = match_left[u]
            match_left[u] = s
            match_right[s] = u
            if u == root:
                break
            s = prev
    return match_left


def hall_violator(adj, match_left):
    """Children reachable by alternating paths from an unmatched child (None if saturated).

    Their admissible slots are all matched back into the set, so the set is
    strictly larger than its neighbourhood.
    """
    free = [c for c, s in enumerate(match_left) if s == -1]
    if not free:
        return None
    match_right = {s: c for c, s in enumerate(match_left) if s != -1}
    seen_left = {free[0]}
    stack = [free[0]]
    while stack:
        c = stack.pop()
        for s in adj[c]:
            d = match_right.get(s)
            if d is not None and d not in seen_left:
                seen_left.add(d)
                stack.append(d)
    return sorted(seen_left)


def neighbourhood(adj, subset):
    out = set()
    for c in subset:
        out.update(adj[c])
    return out


def solve_bipartite(children, slots, admissible):
    adj = bipartite_instance(children, slots, admissible)
    match_left = max_matching(adj, len(slots))
    viol = hall_violator(adj, match_left)
    matching = {children[c]: slots[s] for c, s in enumerate(match_left) if s != -1}
    return MatchResult(
        children=list(children),
        slots=list(slots),
        matching=matching,
        hall_violator=None if viol is None else [children[c] for c in viol],
        imbalance=len(slots) - len(children),
    )


def grouped_matching(demand, supply, reach):
    """Max flow from left groups to right groups, then expanded to a unit matching.

    ``demand[a]`` copies of left group ``a`` may use any of the ``supply[b]``
    copies of each right group ``b`` in ``reach[a]``.  Returns ``(flow, hall)``
    where ``flow[a][b]`` counts matched copies and ``hall`` is the set of left
    groups reachable in the residual graph from an unsaturated group (empty if
    every copy is matched).  Augmenting paths are found by BFS in index order,
    so the result is deterministic.
    """
    nl, nr = len(demand), len(supply)
    flow = [dict() for _ in range(nl)]
    used_l = [0] * nl
    used_r = [0] * nr
    into = [dict() for _ in range(nr)]  # into[b][a] = flow[a][b], for backward edges

    def augment():
        # left-group search from every group with spare demand
        prev_l = {a: None for a in range(nl) if used_l[a] < demand[a]}
        prev_r = {}
        queue = deque(sorted(prev_l))
        while queue:
            a = queue.popleft()
            for b in reach[a]:
                if b in prev_r:
                    continue
                prev_r[b] = a
                if used_r[b] < supply[b]:
                    return prev_l, prev_r, b
                for a2, f in into[b].items():
                    if f > 0 and a2 not in prev_l:
                        prev_l[a2] = b
                        queue.append(a2)
        return prev_l, prev_r, None

    while True:
        prev_l, prev_r, end = augment()
        if end is None:
            break
        # path a0 -> b0 <- a1 -> b1 ... -> end: each a takes flow on b_plus and gives up b_minus
        steps = []
        b = end
        while True:
            a = prev_r[b]
            steps.append((a, b, prev_l[a]))
            if prev_l[a] is None:
                break
            b = prev_l[a]
        a0 = steps[-1][0]
        amount = min(supply[end] - used_r[end], demand[a0] - used_l[a0])
        for a, _, b_minus in steps:
            if b_minus is not None:
                amount = min(amount, flow[a][b_minus])
        for a, b_plus, b_minus in steps:
            flow[a][b_plus] = flow[a].get(b_plus, 0) + amount
            into[b_plus][a] = flow[a][b_plus]
            if b_minus is not None:
                flow[a][b_minus] -= amount
                into[b_minus][a] = flow[a][b_minus]
        used_r[end] += amount
        used_l[a0] += amount
    hall = set(prev_l) if any(used_l[a] < demand[a] for a in range(nl)) else set()
    return flow, hall


def match_generations(patch, level_i, level_next, pop, delta_i, q, dg, max_steps=DIV_STEPS):
    """Match each villager's ``q**delta_i`` children to villager slots one level up.

    Child ``(v, j, k)`` may take slot ``(u, l)`` when the parent of ``u`` is
    within ``max_steps`` of ``v`` in the divergence graph ``dg`` of level ``i``.
    Children of one vertex are interchangeable, as are the slots of one
    vertex, so the matching is solved as a flow between vertices and then
    handed out to children and slots in index order.
    """
    kids = q ** delta_i
    left = list(level_i.gplus)
    right = list(level_next.gplus)
    children = [(v, j, k) for v in left for j in range(pop[v]) for k in range(kids)]
    slots = [(u, l) for u in right for l in range(pop[u])]
    parent = {u: patch.parent_of(u) for u in right}
    reach = []
    for v in left:
        d = dg.distances_from(v)
        reach.append([b for b, u in enumerate(right) if d.get(parent[u], max_steps + 1) <= max_steps])
    demand = [pop[v] * kids for v in left]
    supply = [pop[u] for u in right]
    flow, hall = grouped_matching(demand, supply, reach)
    matching = {}
    next_slot = [0] * len(right)
    for a, v in enumerate(left):
        mine = [(v, j, k) for j in range(pop[v]) for k in range(kids)]
        pos = 0
        for b in sorted(flow[a]):
            for _ in range(flow[a][b]):
                matching[mine[pos]] = (right[b], next_slot[b])
                next_slot[b] += 1
                pos += 1
    violator = None
    if hall:
        violator = [c for c in children if left.index(c[0]) in hall]
    return MatchResult(children, slots, matching, violator, len(slots) - len(children))
