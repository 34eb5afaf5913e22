import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypertile.errors import BudgetExceeded, MarginError, ValidationError
from hypertile.grouptool import load_group
from hypertile.shift import (
    Alphabet,
    BinaryCSP,
    NnSft,
    Patch,
    SftSpec,
    charts_to_nn,
    check_patch,
    check_torus,
    default_budget,
    extend_patch,
    inner_domain,
    is_periodic_word,
    load_sft,
    torus_point_z2,
    window_stabilizer,
    z_periodic_point,
)


def brute_solutions(n, k, constraints):
    out = []
    for vals in itertools.product(range(k), repeat=n):
        if all((vals[i], vals[j]) in allowed for i, j, allowed in constraints):
            out.append(list(vals))
    return out


def random_csp(rng, n, k):
    constraints = []
    for _ in range(rng.randint(1, 2 * n)):
        i, j = rng.randrange(n), rng.randrange(n)
        allowed = {(a, b) for a in range(k) for b in range(k) if rng.random() < 0.6}
        constraints.append((i, j, allowed))
    return constraints


def test_csp_matches_brute_force():
    rng = random.Random(7)
    for _ in range(200):
        n, k = rng.randint(1, 5), rng.randint(1, 3)
        cons = random_csp(rng, n, k)
        csp = BinaryCSP.uniform(n, k)
        for i, j, allowed in cons:
            csp.add(i, j, allowed)
        expected = brute_solutions(n, k, cons)
        assert list(csp.solutions()) == expected
        assert csp.solve() == (expected[0] if expected else None)


def test_csp_triangle_colourings():
    neq = {(a, b) for a in range(3) for b in range(3) if a != b}
    csp = BinaryCSP.uniform(3, 3)
    for i, j in ((0, 1), (1, 2), (0, 2)):
        csp.add(i, j, neq)
    assert csp.count() == 6
    assert csp.solve() == [0, 1, 2]
    assert csp.solve(fixed={0: 2}) == [2, 0, 1]


def test_csp_budget():
    csp = BinaryCSP.uniform(12, 2)
    csp.add(0, 1, {(0, 1)})
    with pytest.raises(BudgetExceeded) as err:
        csp.count(budget=5)
    assert err.value.nodes == 6


def test_budget_env(monkeypatch):
    monkeypatch.setenv("HYPERTILE_BUDGET", "123")
    assert default_budget() == 123
    monkeypatch.delenv("HYPERTILE_BUDGET")
    assert default_budget() == 10_000_000


def test_nn_sft_fills_inverse_pairs(z):
    nn = NnSft(2, z, {"a": [(0, 1)]})
    assert nn.allowed("A") == {(1, 0)}
    with pytest.raises(ValidationError):
        NnSft(2, z, {"a": [(0, 2)]})
    with pytest.raises(ValidationError):
        NnSft(2, z, {"a": [(0, 1)], "A": [(0, 1)]})


def test_extend_patch_on_line(z):
    nn = NnSft(2, z, {"a": [(0, 1), (1, 0)]})
    dom = [z.z(k) for k in range(6)]
    p = extend_patch(nn, dom, Patch({(): 0}))
    assert [p.labels[z.z(k)] for k in range(6)] == [0, 1, 0, 1, 0, 1]
    bad = Patch({z.z(0): 0, z.z(2): 1})
    assert extend_patch(nn, dom, bad) is None
    with pytest.raises(ValidationError):
        extend_patch(nn, dom, Patch({z.z(9): 0}))


def test_atlas_and_recoding_agree(z):
    # golden-mean shift: no two adjacent 1s, as radius-1 charts on Z
    addrs = z.ball_words(1)  # e, a, A
    charts = []
    for c, r, l in itertools.product((0, 1), repeat=3):
        if not (c and (r or l)):
            charts.append((c, r, l))
    sft = SftSpec(Alphabet((0, 1)), z, 1, charts)
    assert sft.addresses == addrs
    dom = [z.z(k) for k in range(-3, 4)]
    p = extend_patch(sft, dom, Patch({(): 1}))
    assert check_patch(sft, p)
    assert p.labels[z.z(1)] == 0 and p.labels[z.z(-1)] == 0
    assert extend_patch(sft, dom, Patch({(): 1, z.z(1): 1})) is None
    nn = charts_to_nn(sft)
    # each chart tile's neighbours must agree on overlaps
    for i, j in nn.allowed("a"):
        ci, cj = charts[i], charts[j]
        assert ci[1] == cj[0] and ci[0] == cj[2]


def test_check_patch_alphabet_mismatch(z):
    sft = SftSpec(Alphabet((0, 1)), z, 1, [(0, 0, 0), (1, 1, 1)])
    with pytest.raises(ValidationError):
        check_patch(sft, Patch({(): 2}))
    with pytest.raises(ValidationError):
        SftSpec(Alphabet((0, 1)), z, 0, [])
    with pytest.raises(ValidationError):
        SftSpec(Alphabet((0, 1)), z, 1, [(0, 1)])


def test_empty_atlas(z):
    sft = SftSpec(Alphabet((0,)), z, 1, [])
    assert sft.empty
    dom = [z.z(k) for k in range(-1, 2)]
    assert not check_patch(sft, Patch({x: 0 for x in dom}))


def test_sft_json_roundtrip(z):
    addrs = z.ball_words(1)
    pats = [dict(zip(addrs, c)) for c in [(0, 0, 0), (1, 0, 0)]]
    sft = SftSpec.from_patterns(Alphabet((0, 1)), z, 1, pats)
    assert sft.charts == ((0, 0, 0), (1, 0, 0))
    back = load_sft(sft.to_dict(), z)
    assert back.charts == sft.charts


def test_unseeded_line_periodic_point(z):
    # C, L, R with east-neighbours C-R, L-C, R-R, L-L
    nn = NnSft(3, z, {"a": [(0, 2), (1, 0), (2, 2), (1, 1)]})
    p, word = z_periodic_point(nn)
    assert p == 1 and word in ((1,), (2,))
    assert is_periodic_word(nn, word)


def test_no_periodic_point_without_cycle(z):
    nn = NnSft(2, z, {"a": [(0, 1)]})
    assert z_periodic_point(nn) is None


def shortest_cycle_brute(n, pairs):
    for p in range(1, n + 1):
        words = [w for w in itertools.product(range(n), repeat=p)
                 if all((w[k], w[(k + 1) % p]) in pairs for k in range(p))]
        if words:
            return p
    return None


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 5), st.sets(st.tuples(st.integers(0, 4), st.integers(0, 4))))
def test_periodic_point_is_shortest_cycle(n, pairs):
    z = load_group("z")
    pairs = {(i, j) for i, j in pairs if i < n and j < n}
    nn = NnSft(n, z, {"a": pairs})
    res = z_periodic_point(nn)
    expected = shortest_cycle_brute(n, pairs)
    if expected is None:
        assert res is None
    else:
        assert res[0] == expected and is_periodic_word(nn, res[1])


def test_checkerboard_torus(z2):
    nn = NnSft(2, z2, {"a": [(0, 1), (1, 0)], "b": [(0, 1), (1, 0)]})
    rows = torus_point_z2(nn, 2, 2)
    assert check_torus(nn, rows)
    assert torus_point_z2(nn, 3, 3) is None
    assert torus_point_z2(nn, 4, 2) is not None
    with pytest.raises(ValidationError):
        torus_point_z2(nn, 0, 2)


def test_torus_matches_brute_force(z2):
    rng = random.Random(11)
    for _ in range(60):
        k = rng.randint(1, 3)
        e = {(i, j) for i in range(k) for j in range(k) if rng.random() < 0.5}
        n = {(i, j) for i in range(k) for j in range(k) if rng.random() < 0.5}
        nn = NnSft(k, z2, {"a": e, "b": n})
        w, h = rng.randint(1, 3), rng.randint(1, 2)
        found = torus_point_z2(nn, w, h)
        exists = any(
            check_torus(nn, [list(vals[y * w:(y + 1) * w]) for y in range(h)])
            for vals in itertools.product(range(k), repeat=w * h)
        )
        assert (found is not None) == exists
        if found is not None:
            assert check_torus(nn, found)


def test_window_stabilizer(z):
    word = [0, 1, 0, 1, 0, 1]
    p = Patch({z.z(k): v for k, v in enumerate(word)})
    moves = [z.z(k) for k in range(-3, 4)]
    kept = window_stabilizer(p, moves, z)
    assert kept == [z.z(-2), (), z.z(2)]
    inner = inner_domain(z, p.domain, 1)
    assert inner == frozenset(z.z(k) for k in range(1, 5))
    with pytest.raises(MarginError):
        window_stabilizer(p, [z.z(3)], z, inner=inner)
    with pytest.raises(MarginError):
        window_stabilizer(p, [z.z(6)], z)
