"""Deterministic backtracking for binary constraint problems.

Variables are visited in a fixed order and values in increasing index order,
so the first solution returned is the lexicographically least one for that
order.  Arc-consistency maintenance only prunes, it never changes which
solution is found first.  Domains are int bitmasks.
"""

import os

from ..errors import BudgetExceeded

DEFAULT_BUDGET = 10_000_000


def default_budget():
    """Node cap, overridable through the ``HYPERTILE_BUDGET`` environment variable."""
    env = os.environ.get("HYPERTILE_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class BinaryCSP:
    """``n`` variables with value domains ``range(k_i)`` and pair constraints."""

    def __init__(self, domains):
        self.domains = [int(d) for d in domains]
        self.n = len(self.domains)
        # support[i][j][v] = bitmask of values of j compatible with i = v
        self.support = [dict() for _ in range(self.n)]

    @classmethod
    def uniform(cls, n, k):
        return cls([(1 << k) - 1] * n)

    def add(self, i, j, allowed):
        """Constrain ``(value_i, value_j)`` to lie in ``allowed`` (set of pairs)."""
        if i == j:
            keep = 0
            for v in bits(self.domains[i]):
                if (v, v) in allowed:
                    keep |= 1 << v
            self.domains[i] &= keep
            return
        fwd = {}
        bwd = {}
        for v, w in allowed:
            fwd[v] = fwd.get(v, 0) | (1 << w)
            bwd[w] = bwd.get(w, 0) | (1 << v)
        self._merge(i, j, fwd)
        self._merge(j, i, bwd)

    def _merge(self, i, j, table):
        old = self.support[i].get(j)
        if old is None:
            self.support[i][j] = table
        else:
            self.support[i][j] = {v: old.get(v, 0) & m for v, m in table.items() if old.get(v, 0) & m}

    def solve(self, order=None, budget=None, fixed=None):
        """First solution as a list of value indices, or ``None`` if none exists.

        Raises :class:`BudgetExceeded` when more than ``budget`` nodes are
        expanded before the search is decided.
        """
        for sol in self.solutions(order, budget, fixed):
            return sol
        return None

    def count(self, order=None, budget=None, limit=None):
        n = 0
        for _ in self.solutions(order, budget):
            n += 1
            if limit is not None and n >= limit:
                break
        return n

    def solutions(self, order=None, budget=None, fixed=None):
        if budget is None:
            budget = default_budget()
        order = list(range(self.n)) if order is None else list(order)
        doms = list(self.domains)
        if fixed:
            for i, v in fixed.items():
                doms[i] &= 1 << v
        if not self._propagate(doms, range(self.n)):
            return
        nodes = 0
        n = len(order)
        # explicit stack of (depth, remaining values, saved domains)
        stack = [(0, doms[order[0]] if n else 0, doms)] if n else []
        if not n:
            yield []
            return
        while stack:
            depth, remaining, saved = stack.pop()
            if not remaining:
                continue
            v = (remaining & -remaining).bit_length() - 1
            stack.append((depth, remaining & (remaining - 1), saved))
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"search exceeded {budget} nodes", nodes=nodes)
            var = order[depth]
            doms = list(saved)
            doms[var] = 1 << v
            if not self._propagate(doms, (var,)):
                continue
            if depth + 1 == n:
                yield [(d.bit_length() - 1) for d in doms]
                continue
            nxt = order[depth + 1]
            stack.append((depth + 1, doms[nxt], doms))

    def _propagate(self, doms, changed):
        """AC-3 from the changed variables; False on a wipe-out."""
        support = self.support
        queue = list(changed)
        inq = set(queue)
        while queue:
            i = queue.pop()
            inq.discard(i)
            di = doms[i]
            for j, table in support[i].items():
                reach = 0
                for v in bits(di):
                    reach |= table.get(v, 0)
                dj = doms[j]
                nd = dj & reach
                if nd != dj:
                    if not nd:
                        return False
                    doms[j] = nd
                    if j not in inq:
                        inq.add(j)
                        queue.append(j)
        return True
