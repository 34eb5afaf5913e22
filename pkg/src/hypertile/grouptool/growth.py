"""Growth of the normal-form language: sphere counts, spectral radii, state classes."""

import logging
import math

import numpy as np
import sympy

from ..errors import FiniteGroupError, HypertileError
from .acceptor import FINITE, MAXIMAL, SUBMAXIMAL, WordAcceptor

log = logging.getLogger(__name__)

LAMBDA_TOL = 1e-9
CLASS_TOL = 1e-6
MAX_POWER_STEPS = 1_000_000


def transition_matrix(acc):
    """Integer matrix ``M[s, t]`` = number of generators leading from ``s`` to ``t``."""
    n = acc.n_states
    m = np.zeros((n, n), dtype=np.int64)
    for s, row in enumerate(acc.transitions):
        for t in row.values():
            m[s, t] += 1
    return m


def sphere_counts(acc, n):
    """``[|S(0)|, ..., |S(n)|]``: accepted words of each length up to ``n``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    vec = [0] * acc.n_states
    vec[0] = 1
    out = [1]
    for _ in range(n):
        nxt = [0] * acc.n_states
        for s, c in enumerate(vec):
            if c:
                for t in acc.transitions[s].values():
                    nxt[t] += c
        vec = nxt
        out.append(sum(c for s, c in enumerate(vec) if s in acc.accepting))
    return out


def strongly_connected_components(acc, states=None):
    """Tarjan's SCCs of the transition graph restricted to ``states``."""
    if states is None:
        states = range(acc.n_states)
    allowed = set(states)
    index, low, on_stack = {}, {}, set()
    stack, comps = [], []
    counter = [0]

    def visit(root):
        work = [(root, iter(sorted(acc.transitions[root].values())))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in allowed:
                    continue
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(sorted(acc.transitions[w].values()))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))

    for s in sorted(allowed):
        if s not in index:
            visit(s)
    return comps


def _has_cycle(acc, comp):
    if len(comp) > 1:
        return True
    s = comp[0]
    return s in acc.transitions[s].values()


def irreducible_radius(mat, tol=LAMBDA_TOL, max_steps=MAX_POWER_STEPS):
    """Spectral radius of an irreducible non-negative matrix by power iteration.

    Iterates on ``mat + I`` (primitive, same Perron vector) and stops when
    successive Rayleigh quotients differ by less than ``tol`` and the
    Collatz-Wielandt bracket ``[min (Bx)_i/x_i, max (Bx)_i/x_i]`` is narrower
    than ``tol``.  The bracket is rigorous for positive ``x``.
    """
    a = np.asarray(mat, dtype=float)
    n = a.shape[0]
    if n == 1:
        return float(a[0, 0])
    b = a + np.eye(n)
    x = np.ones(n) / math.sqrt(n)
    prev = None
    for _ in range(max_steps):
        y = b @ x
        rq = float(x @ y) / float(x @ x)
        ratios = y / x
        lo, hi = float(ratios.min()), float(ratios.max())
        if prev is not None and abs(rq - prev) < tol and hi - lo < tol:
            return 0.5 * (lo + hi) - 1.0
        prev = rq
        x = y / np.linalg.norm(y)
    raise HypertileError("power iteration did not converge")


def component_radii(acc, tol=LAMBDA_TOL, states=None):
    """Map each SCC (as a tuple of states) to its spectral radius (0 if acyclic)."""
    m = transition_matrix(acc)
    radii = {}
    for comp in strongly_connected_components(acc, states):
        if not _has_cycle(acc, comp):
            radii[tuple(comp)] = 0.0
            continue
        sub = m[np.ix_(comp, comp)]
        radii[tuple(comp)] = irreducible_radius(sub, tol)
    return radii


def growth_rate(acc, tol=LAMBDA_TOL):
    """Spectral radius of the transition count matrix (the growth rate)."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    radii = component_radii(acc, tol)
    lam = max(radii.values(), default=0.0)
    if lam == 0.0:
        raise FiniteGroupError("finite group: the acceptor language has no cycle")
    counts = sphere_counts(acc, 12)
    if counts[-2]:
        ratio = counts[-1] / counts[-2]
        if abs(ratio - lam) > 0.05 * lam:
            log.info("sphere ratio %.6f differs from lambda %.9f by > 5%%", ratio, lam)
    return lam


def reachable(acc, s):
    seen = {s}
    stack = [s]
    while stack:
        v = stack.pop()
        for t in acc.transitions[v].values():
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return seen


def classify_states(acc, tol=CLASS_TOL, lam_tol=LAMBDA_TOL):
    """Return a copy of ``acc`` with ``growth_class`` and ``lam`` filled in.

    A state is *maximal* when its reachable sub-automaton has spectral radius
    within ``tol`` of the global radius, *finite* when it reaches no cycle,
    and *submaximal* otherwise.
    """
    radii = component_radii(acc, lam_tol)
    lam = max(radii.values(), default=0.0)
    comp_of = {}
    for comp in radii:
        for s in comp:
            comp_of[s] = comp
    classes = []
    for s in range(acc.n_states):
        r = max(radii[comp_of[t]] for t in reachable(acc, s))
        if r == 0.0:
            classes.append(FINITE)
        elif r >= lam - tol:
            classes.append(MAXIMAL)
        else:
            classes.append(SUBMAXIMAL)
    return WordAcceptor(acc.generators, acc.transitions, acc.accepting, classes, lam or None)


def state_measure(acc, tol=LAMBDA_TOL):
    """Perron-Frobenius-like measure on the maximal states.

    A left eigenvector for ``lam`` of the transition matrix restricted to the
    maximal states.  It is supported on the *final* classes of that
    restriction (those with no edges leaving them); each such class carries
    its own left Perron vector with equal class weight, and the whole vector
    is normalised to sum 1.  Returns ``{state: mass}`` over maximal states.
    """
    if acc.growth_class is None:
        acc = classify_states(acc)
    maximal = sorted(acc.maximal_states())
    m = transition_matrix(acc)
    comps = strongly_connected_components(acc, maximal)
    final = []
    for comp in comps:
        cs = set(comp)
        leaves = any(
            t in maximal and t not in cs
            for s in comp
            for t in acc.transitions[s].values()
        )
        if not leaves and _has_cycle(acc, comp):
            final.append(comp)
    mu = {s: 0.0 for s in maximal}
    for comp in final:
        sub = m[np.ix_(comp, comp)].T.astype(float)
        vec = _perron_vector(sub, tol)
        vec = vec / vec.sum() / len(final)
        for s, v in zip(comp, vec):
            mu[s] = float(v)
    return mu


def _perron_vector(mat, tol):
    n = mat.shape[0]
    b = mat + np.eye(n)
    x = np.ones(n) / n
    for _ in range(MAX_POWER_STEPS):
        y = b @ x
        y /= y.sum()
        if np.abs(y - x).max() < tol:
            return y
        x = y
    raise HypertileError("Perron vector iteration did not converge")


def characteristic_polynomial(acc):
    """Integer characteristic polynomial of the transition matrix (sympy ``Poly``)."""
    x = sympy.Symbol("x")
    mat = sympy.Matrix(transition_matrix(acc).tolist())
    return mat.charpoly(x)


def minimal_polynomial_of(lam, acc=None):
    """Minimal polynomial over Q of the algebraic integer ``lam``.

    With an acceptor, ``lam`` is located among the irreducible factors of the
    characteristic polynomial; without one it must be an integer.
    """
    x = sympy.Symbol("x")
    if acc is None:
        r = round(lam)
        if abs(lam - r) > 1e-9:
            raise ValueError("non-integer lambda needs the acceptor to recover its polynomial")
        return sympy.Poly(x - r, x)
    cp = characteristic_polynomial(acc)
    best = None
    for fac, _ in sympy.factor_list(cp.as_expr(), x)[1]:
        poly = sympy.Poly(fac, x)
        if poly.degree() == 0:
            continue
        for root in poly.real_roots():
            if not root.is_real:
                continue
            err = abs(float(root.evalf(30)) - lam)
            if best is None or err < best[0]:
                best = (err, poly)
    if best is None or best[0] > 1e-6:
        raise HypertileError("lambda is not a root of the characteristic polynomial")
    return best[1]


def exponent_collisions(lam, q, acc=None, max_exp=16):
    """Pairs ``(a, b)`` with ``lam**b == q**a`` exactly, ``1 <= a, b <= max_exp``."""
    x = sympy.Symbol("x")
    minpoly = minimal_polynomial_of(lam, acc)
    hits = []
    for b in range(1, max_exp + 1):
        for a in range(1, max_exp + 1):
            if abs(b * math.log(lam) - a * math.log(q)) > 1e-6:
                continue
            if sympy.rem(sympy.Poly(x**b - q**a, x), minpoly).is_zero:
                hits.append((a, b))
    return hits


def choose_q(lam, acc=None, max_exp=16):
    """Pick ``q`` in ``(2, 3)`` with no exact relation ``lam**b == q**a``."""
    if lam <= 1:
        raise ValueError("choose_q needs lambda > 1")
    diagnostics = {}
    for q in (2, 3):
        hits = exponent_collisions(lam, q, acc, max_exp)
        if not hits:
            if diagnostics:
                log.info("q=2 excluded by exponent pairs %s", diagnostics[2])
            return q
        diagnostics[q] = hits
    raise HypertileError(f"both q=2 and q=3 are commensurable with lambda: {diagnostics}")
