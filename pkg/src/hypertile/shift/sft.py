"""Subshifts of finite type as atlases of charts, and their nearest-neighbour recoding."""

import json
from dataclasses import dataclass, field

from ..errors import BudgetExceeded, ValidationError
from .search import BinaryCSP, default_budget


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple

    def __post_init__(self):
        if not self.symbols:
            raise ValidationError("alphabet must be non-empty")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValidationError("alphabet symbols must be distinct")

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, s):
        return s in self.symbols

    def index(self, s):
        return self.symbols.index(s)


class SftSpec:
    """Alphabet plus an atlas of radius-``radius`` charts on a group.

    A chart is a tuple of symbols indexed like ``group.ball_words(radius)``.
    An empty atlas is the empty subshift.
    """

    def __init__(self, alphabet, group, radius, charts):
        if radius < 1:
            raise ValidationError("chart radius must be at least 1")
        if not isinstance(alphabet, Alphabet):
            alphabet = Alphabet(tuple(alphabet))
        self.alphabet = alphabet
        self.group = group
        self.radius = radius
        self.addresses = group.ball_words(radius)
        seen = {}
        for chart in charts:
            chart = tuple(chart)
            if len(chart) != len(self.addresses):
                raise ValidationError(
                    f"chart has {len(chart)} labels, ball of radius {radius} has {len(self.addresses)}"
                )
            for s in chart:
                if s not in alphabet:
                    raise ValidationError(f"chart symbol {s!r} not in alphabet")
            seen.setdefault(chart, None)
        self.charts = tuple(seen)
        self._chart_set = frozenset(self.charts)

    def __repr__(self):
        return f"<SftSpec |A|={len(self.alphabet)} R={self.radius} charts={len(self.charts)}>"

    @property
    def empty(self):
        return not self.charts

    def chart_map(self, i):
        return dict(zip(self.addresses, self.charts[i]))

    @classmethod
    def from_patterns(cls, alphabet, group, radius, patterns):
        """Build an atlas from ``{address_word: symbol}`` dictionaries."""
        addrs = group.ball_words(radius)
        charts = [tuple(p[a] for a in addrs) for p in patterns]
        return cls(alphabet, group, radius, charts)

    def to_dict(self):
        g = self.group
        return {
            "alphabet": list(self.alphabet.symbols),
            "radius": self.radius,
            "group": g.name,
            "addresses": [g.fmt(a) for a in self.addresses],
            "charts": [list(c) for c in self.charts],
        }


@dataclass
class Patch:
    """Labels on a finite set of group elements (normal forms)."""

    labels: dict
    domain: frozenset = field(default=None)

    def __post_init__(self):
        if self.domain is None:
            self.domain = frozenset(self.labels)
        else:
            self.domain = frozenset(self.domain)
        missing = self.domain - set(self.labels)
        if missing:
            raise ValidationError(f"patch labels missing on {len(missing)} domain elements")

    def __len__(self):
        return len(self.domain)

    def translate(self, group, t):
        """The patch moved by left multiplication with ``t``."""
        return Patch({group.mul(t, x): s for x, s in self.labels.items() if x in self.domain})

    def to_dict(self, group):
        order = sorted(self.domain, key=lambda w: (len(w), w))
        return {
            "group": group.name,
            "domain": [group.fmt(w) for w in order],
            "labels": [self.labels[w] for w in order],
        }

    @classmethod
    def from_dict(cls, d, group):
        dom = [group.parse(w) for w in d["domain"]]
        labels = d["labels"]
        if len(dom) != len(labels):
            raise ValidationError("domain and labels have different lengths")
        return cls(dict(zip(dom, labels)))


def _ball_cells(group, g, addresses):
    return [group.mul(g, x) for x in addresses]


def check_patch(sft, patch):
    """True iff every centre whose ball lies in the patch sees one of the charts."""
    for s in patch.labels.values():
        if s not in sft.alphabet:
            raise ValidationError(f"alphabet mismatch: {s!r}")
    if sft.empty:
        return len(patch.domain) == 0
    g_ = sft.group
    for g in patch.domain:
        cells = _ball_cells(g_, g, sft.addresses)
        if all(c in patch.domain for c in cells):
            if tuple(patch.labels[c] for c in cells) not in sft._chart_set:
                return False
    return True


class NnSft:
    """Nearest-neighbour SFT: tiles ``0..n-1`` and allowed pairs per generator.

    ``pairs[a]`` holds ``(i, j)`` when tile ``j`` may sit at ``g a`` next to
    tile ``i`` at ``g``.  Pairs for ``a^-1`` are the transposes and are filled
    in automatically.  ``names`` optionally labels the tiles; ``seeds`` lists
    tiles that seeded checks require somewhere in the window.
    """

    def __init__(self, n_tiles, group, pairs, names=None, seeds=()):
        self.n_tiles = n_tiles
        self.seeds = frozenset(seeds)
        self.group = group
        self.names = tuple(names) if names is not None else tuple(range(n_tiles))
        if len(self.names) != n_tiles:
            raise ValidationError("tile names do not match tile count")
        full = {}
        for a, ps in pairs.items():
            if isinstance(a, str):
                a = group.gen(a)
            ps = frozenset((int(i), int(j)) for i, j in ps)
            for i, j in ps:
                if not (0 <= i < n_tiles and 0 <= j < n_tiles):
                    raise ValidationError(f"pair ({i}, {j}) out of range")
            b = group.inverse[a]
            t = frozenset((j, i) for i, j in ps)
            for key, val in ((a, ps), (b, t)):
                if key in full and full[key] != val:
                    raise ValidationError("pairs for a generator and its inverse are not transposes")
                full[key] = val
        for a in range(group.rank):
            full.setdefault(a, frozenset())
        self.pairs = full

    def __repr__(self):
        return f"<NnSft tiles={self.n_tiles} group={self.group.name}>"

    def allowed(self, a):
        if isinstance(a, str):
            a = self.group.gen(a)
        return self.pairs[a]

    def to_dict(self):
        g = self.group
        seen = set()
        out = {}
        for a in range(g.rank):
            if a in seen:
                continue
            seen.update((a, g.inverse[a]))
            out[g.pres.generators[a]] = sorted(list(p) for p in self.pairs[a])
        d = {"group": g.name, "tiles": self.n_tiles, "names": [str(n) for n in self.names], "pairs": out}
        if self.seeds:
            d["seeds"] = sorted(self.seeds)
        return d


def charts_to_nn(sft):
    """Recode an atlas as a nearest-neighbour SFT whose tiles are the charts."""
    g = sft.group
    addrs = sft.addresses
    pos = {a: k for k, a in enumerate(addrs)}
    pairs = {}
    for a in range(g.rank):
        a_inv = (g.inverse[a],)
        # overlap: x in B_R with a^-1 x in B_R
        overlap = []
        for k, x in enumerate(addrs):
            y = g.mul(a_inv, x)
            if y in pos:
                overlap.append((k, pos[y]))
        ok = set()
        for i, ci in enumerate(sft.charts):
            for j, cj in enumerate(sft.charts):
                if all(ci[k] == cj[m] for k, m in overlap):
                    ok.add((i, j))
        pairs[a] = ok
    names = [f"chart{i}" for i in range(len(sft.charts))]
    return NnSft(len(sft.charts), g, pairs, names)


def nn_to_labels(sft, tiling):
    """Project a tiling by charts (``{g: chart index}``) to symbols at each element."""
    return {g: sft.charts[i][0] for g, i in tiling.items()}


def center_order(group, domain):
    """Domain sorted by distance from the window centre, then shortlex."""
    dom = sorted(domain, key=lambda w: (len(w), w))
    if len(dom) <= 2:
        return dom
    best = None
    for c in dom:
        ecc = max(group.dist(c, x) for x in dom)
        if best is None or ecc < best[0]:
            best = (ecc, c)
    center = best[1]
    return sorted(dom, key=lambda w: (group.dist(center, w), len(w), w))


def extend_patch(sft, domain, partial=None, budget=None, order=None):
    """Extend ``partial`` to a valid labelling of ``domain``.

    Works for a chart atlas (:class:`SftSpec`, labels are symbols) or a
    nearest-neighbour SFT (:class:`NnSft`, labels are tile indices).  Returns
    a :class:`Patch` or ``None``; running out of ``budget`` nodes raises
    :class:`BudgetExceeded` instead.
    """
    domain = frozenset(domain)
    partial = partial or Patch({})
    if budget is None:
        budget = default_budget()
    group = sft.group
    if order is None:
        order = center_order(group, domain)
    if isinstance(sft, NnSft):
        return _extend_nn(sft, domain, partial, budget, order)
    return _extend_atlas(sft, domain, partial, budget, order)


def _extend_nn(sft, domain, partial, budget, order):
    group = sft.group
    index = {g: k for k, g in enumerate(order)}
    csp = BinaryCSP.uniform(len(order), sft.n_tiles)
    for g in order:
        for a in range(group.rank):
            h = group.mul(g, (a,))
            if h in index and (index[g] < index[h] or h == g):
                csp.add(index[g], index[h], sft.pairs[a])
    fixed = {}
    for g, v in partial.labels.items():
        if g not in index:
            raise ValidationError("partial patch lies outside the domain")
        fixed[index[g]] = v
    sol = csp.solve(budget=budget, fixed=fixed)
    if sol is None:
        return None
    return Patch({g: sol[index[g]] for g in order})


def _extend_atlas(sft, domain, partial, budget, order):
    if sft.empty:
        return None if domain else Patch({})
    group = sft.group
    symbols = sft.alphabet.symbols
    index = {g: k for k, g in enumerate(order)}
    # centres whose whole ball lies in the domain, as lists of variable indices
    centres = []
    for g in order:
        cells = [group.mul(g, x) for x in sft.addresses]
        if all(c in index for c in cells):
            centres.append([index[c] for c in cells])
    watch = [[] for _ in order]
    for ci, cells in enumerate(centres):
        for pos, v in enumerate(cells):
            watch[v].append((ci, pos))
    charts = [tuple(symbols.index(s) for s in c) for c in sft.charts]
    fixed = {}
    for g, s in partial.labels.items():
        if g not in index:
            raise ValidationError("partial patch lies outside the domain")
        fixed[index[g]] = symbols.index(s)
    assign = [None] * len(order)
    nodes = 0

    def consistent(v):
        for ci, _ in watch[v]:
            cells = centres[ci]
            if not any(
                all(assign[c] is None or assign[c] == ch[p] for p, c in enumerate(cells))
                for ch in charts
            ):
                return False
        return True

    for v, val in fixed.items():
        assign[v] = val
    for v in fixed:
        if not consistent(v):
            return None

    free = [k for k in range(len(order)) if k not in fixed]

    def rec(depth):
        nonlocal nodes
        if depth == len(free):
            return True
        v = free[depth]
        for val in range(len(symbols)):
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"search exceeded {budget} nodes", nodes=nodes)
            assign[v] = val
            if consistent(v) and rec(depth + 1):
                return True
        assign[v] = None
        return False

    if not rec(0):
        return None
    return Patch({g: symbols[assign[index[g]]] for g in order})


def load_sft(d, group):
    """Read an SFT file (JSON dict): an atlas or a nearest-neighbour SFT."""
    if "charts" in d:
        addrs = [group.parse(a) for a in d["addresses"]]
        radius = int(d["radius"])
        expect = group.ball_words(radius)
        if sorted(addrs) != sorted(expect):
            raise ValidationError("chart addresses are not the radius-R ball")
        charts = []
        for c in d["charts"]:
            m = dict(zip(addrs, c))
            charts.append(tuple(m[a] for a in expect))
        return SftSpec(Alphabet(tuple(d["alphabet"])), group, radius, charts)
    if "pairs" in d:
        return NnSft(int(d["tiles"]), group, d["pairs"], d.get("names"), d.get("seeds", ()))
    raise ValidationError("SFT file needs 'charts' or 'pairs'")


def dump_json(obj):
    return json.dumps(obj, indent=2, sort_keys=True)
