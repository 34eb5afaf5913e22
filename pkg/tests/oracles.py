"""Independent oracles used by the test-suite.

Nothing here imports the rewriting machinery: word problems are decided by
coordinates (Z, Z^2), free reduction (free groups) or Dehn's algorithm
(small-cancellation surface groups), and Cayley balls are grown by BFS with
vertex identity decided by those procedures.
"""

import itertools
from fractions import Fraction


def free_reduce(word, inverse):
    out = []
    for x in word:
        if out and out[-1] == inverse[x]:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert(word, inverse):
    return tuple(inverse[x] for x in reversed(word))


def symmetrized(relators, inverse):
    out = set()
    for r in relators:
        r = free_reduce(r, inverse)
        for w in (r, invert(r, inverse)):
            for i in range(len(w)):
                out.add(w[i:] + w[:i])
    return sorted(out)


def dehn_reduce(word, relators, inverse):
    """Dehn's algorithm: replace any piece longer than half a relator."""
    rels = symmetrized(relators, inverse)
    word = free_reduce(word, inverse)
    changed = True
    while changed:
        changed = False
        for r in rels:
            n = len(r)
            for k in range(n // 2 + 1, n + 1):
                piece = r[:k]
                for i in range(len(word) - k + 1):
                    if word[i:i + k] == piece:
                        repl = invert(r[k:], inverse)
                        word = free_reduce(word[:i] + repl + word[i + k:], inverse)
                        changed = True
                        break
                if changed:
                    break
            if changed:
                break
    return word


def dehn_is_identity(word, relators, inverse):
    return dehn_reduce(word, relators, inverse) == ()


def abelian_image(word, inverse):
    """Exponent-sum vector: a cheap invariant that buckets candidate equalities."""
    vec = {}
    for x in word:
        y = inverse[x]
        base, sign = (x, 1) if x <= y else (y, -1)
        vec[base] = vec.get(base, 0) + sign
    return tuple(sorted((k, v) for k, v in vec.items() if v))


def dehn_bfs_spheres(relators, inverse, rank, radius):
    """Sphere sizes and a depth map by BFS, identifying words via Dehn's algorithm.

    Returns ``(sizes, reps)`` where ``reps`` is a list of (word, depth).
    """
    buckets = {}
    reps = []

    def find(w):
        key = abelian_image(w, inverse)
        for u in buckets.get(key, ()):
            if dehn_is_identity(invert(u, inverse) + w, relators, inverse):
                return u
        return None

    def add(w, d):
        buckets.setdefault(abelian_image(w, inverse), []).append(w)
        reps.append((w, d))

    add((), 0)
    frontier = [()]
    sizes = [1]
    for d in range(1, radius + 1):
        nxt = []
        for v in frontier:
            for a in range(rank):
                w = free_reduce(v + (a,), inverse)
                if find(w) is None:
                    add(w, d)
                    nxt.append(w)
        sizes.append(len(nxt))
        frontier = nxt
    return sizes, reps


def z2_coords(word, names):
    """Position of a word over a, A, b, B in Z^2."""
    x = y = 0
    for c in word:
        g = names[c]
        x += {"a": 1, "A": -1}.get(g, 0)
        y += {"b": 1, "B": -1}.get(g, 0)
    return x, y


def largest_real_root(poly_coeffs, tol=Fraction(1, 10**13)):
    """Largest real root of an integer polynomial by exact bisection.

    ``poly_coeffs`` are integer coefficients, highest degree first.  Works on
    the square-free part so even-multiplicity roots still change sign.
    """
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly(poly_coeffs, x)
    sqf = sympy.Poly(sympy.quo(poly, sympy.gcd(poly, poly.diff(x))), x)
    coeffs = [Fraction(int(c)) for c in sqf.all_coeffs()]
    lead = coeffs[0]

    def value(t):
        acc = Fraction(0)
        for c in coeffs:
            acc = acc * t + c
        return acc

    # Cauchy bound: every root has |root| < 1 + max |c_i / c_0|
    hi = 1 + max(abs(c / lead) for c in coeffs[1:]) if len(coeffs) > 1 else Fraction(1)
    sign_hi = value(hi) > 0
    # scan downward for the first sign change
    step = Fraction(1, 64)
    lo = hi - step
    while (value(lo) > 0) == sign_hi and value(lo) != 0:
        lo -= step
        if lo < -hi:
            raise ValueError("no real root")
    if value(lo) == 0:
        return lo
    a, b = lo, lo + step
    while b - a > tol:
        m = (a + b) / 2
        vm = value(m)
        if vm == 0:
            return m
        if (vm > 0) == sign_hi:
            b = m
        else:
            a = m
    return (a + b) / 2


def all_words(rank, length):
    return itertools.product(range(rank), repeat=length)
