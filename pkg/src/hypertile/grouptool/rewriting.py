"""Shortlex Knuth-Bendix completion for group presentations."""

import heapq
import logging

from ..errors import NotConfluentError, ValidationError

log = logging.getLogger(__name__)

DEFAULT_MAX_RULES = 20000
DEFAULT_MAX_LEN = 64


def shortlex_key(word):
    return (len(word), word)


def shortlex_less(u, v):
    return (len(u), u) < (len(v), v)


class RewritingSystem:
    """A set of shortlex-decreasing rules ``lhs -> rhs`` over a presentation.

    ``confluent`` is true when completion finished inside its budget, in which
    case :meth:`rewrite` computes shortlex normal forms.  ``cap_hit`` marks a
    completion that stopped on ``max_rules``/``max_len``.
    """

    def __init__(self, presentation, rules, confluent, cap_hit=False):
        self.presentation = presentation
        self.rules = tuple(sorted(rules, key=lambda r: shortlex_key(r[0])))
        self.confluent = confluent
        self.cap_hit = cap_hit
        for lhs, rhs in self.rules:
            if not shortlex_less(rhs, lhs):
                raise ValidationError(f"rule {lhs} -> {rhs} does not decrease shortlex order")
        self._table = dict(self.rules)
        self._lengths = sorted({len(l) for l, _ in self.rules})

    def __repr__(self):
        state = "confluent" if self.confluent else ("capped" if self.cap_hit else "partial")
        return f"<RewritingSystem {len(self.rules)} rules, {state}>"

    @property
    def rank(self):
        return self.presentation.rank

    def rewrite(self, word):
        """Rewrite ``word`` to an irreducible word (the normal form if confluent)."""
        return _rewrite(word, self._table, self._lengths)

    def is_irreducible(self, word):
        table = self._table
        for L in self._lengths:
            for i in range(len(word) - L + 1):
                if word[i:i + L] in table:
                    return False
        return True

    def require_confluent(self):
        if not self.confluent:
            raise NotConfluentError(
                "rewriting system is not confluent"
                + (" (completion budget exhausted)" if self.cap_hit else "")
            )


def _rewrite(word, table, lengths):
    out = []
    pending = list(reversed(word))
    while pending:
        out.append(pending.pop())
        n = len(out)
        for L in lengths:
            if L > n:
                break
            rhs = table.get(tuple(out[n - L:]))
            if rhs is not None:
                del out[n - L:]
                pending.extend(reversed(rhs))
                break
    return tuple(out)


def reduce(rs, word):
    """Shortlex normal form of ``word``; ``rs`` must be confluent."""
    rs.require_confluent()
    return rs.rewrite(tuple(word))


def _overlaps(l1, r1, l2, r2):
    """Critical pairs from proper overlaps of a suffix of l1 with a prefix of l2."""
    for k in range(1, min(len(l1), len(l2))):
        if l1[-k:] == l2[:k]:
            yield len(l1) + len(l2) - k, r1 + l2[k:], l1[:-k] + r2


def kb_complete(pres, max_rules=DEFAULT_MAX_RULES, max_len=DEFAULT_MAX_LEN):
    """Run shortlex Knuth-Bendix completion on ``pres``.

    Critical pairs are resolved shortest-overlap first, which makes the
    procedure fair.  Exhausting ``max_rules`` or producing a left-hand side
    longer than ``max_len`` stops completion with ``cap_hit`` set; that is a
    normal outcome, not an error.
    """
    if pres.rank == 0:
        raise ValidationError("empty generator set")
    if max_rules <= 0 or max_len <= 0:
        raise ValueError("budgets must be positive")

    rules = {}
    lengths = []
    heap = []
    counter = 0

    def push(size, u, v):
        nonlocal counter
        heapq.heappush(heap, (size, counter, u, v))
        counter += 1

    for x in range(pres.rank):
        push(2, (x, pres.inverse[x]), ())
    for r in pres.relators:
        push(len(r), tuple(r), ())

    cap_hit = False
    while heap:
        _, _, u, v = heapq.heappop(heap)
        u = _rewrite(u, rules, lengths)
        v = _rewrite(v, rules, lengths)
        if u == v:
            continue
        if shortlex_less(u, v):
            u, v = v, u
        if len(u) > max_len or len(rules) >= max_rules:
            cap_hit = True
            log.info("completion capped at %d rules", len(rules))
            break
        # interreduce: rules whose lhs contains u become equations again
        for lhs in list(rules):
            if lhs != u and _contains(lhs, u):
                push(len(lhs), lhs, rules.pop(lhs))
        rules[u] = v
        lengths = sorted({len(l) for l in rules})
        for lhs, rhs in list(rules.items()):
            nr = _rewrite(rhs, rules, lengths)
            if nr != rhs:
                rules[lhs] = nr
        v = rules[u]
        for lhs, rhs in list(rules.items()):
            for size, a, b in _overlaps(u, v, lhs, rhs):
                push(size, a, b)
            if lhs != u:
                for size, a, b in _overlaps(lhs, rhs, u, v):
                    push(size, a, b)

    return RewritingSystem(pres, rules.items(), confluent=not cap_hit, cap_hit=cap_hit)


def _contains(word, sub):
    n = len(sub)
    for i in range(len(word) - n + 1):
        if word[i:i + n] == sub:
            return True
    return False
