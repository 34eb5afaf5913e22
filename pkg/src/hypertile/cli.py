"""Command-line interface: ``hypertile <area> <command> ...``.

Every command prints a short human-readable result.  ``--json`` prints the
full report instead, and ``--out FILE`` writes the report atomically next to
a ``FILE.manifest.json`` run manifest.  Exit codes: 0 success, 1 no result,
2 input error, 3 consistency error, 4 budget exhausted.  Failures print a
JSON error object on stderr.
"""

import argparse
import hashlib
import json
import os
import sys
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import __version__
from .errors import (
    BudgetExceeded,
    ConsistencyError,
    FiniteGroupError,
    HypertileError,
    InfeasibleError,
    MarginError,
    NotConfluentError,
    ParseError,
    ValidationError,
)

EXIT_OK, EXIT_NONE, EXIT_INPUT, EXIT_CONSISTENCY, EXIT_BUDGET = 0, 1, 2, 3, 4


class NoResult(Exception):
    """A search finished without finding anything (exit 1)."""


def _sha256(data):
    if isinstance(data, str):
        data = data.encode()
    return hashlib.sha256(data).hexdigest()


@dataclass
class RunManifest:
    command: str
    inputs: dict = field(default_factory=dict)  # name -> sha256
    params: dict = field(default_factory=dict)
    version: str = __version__
    outputs: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "command": self.command,
            "inputs": dict(sorted(self.inputs.items())),
            "params": self.params,
            "version": self.version,
            "outputs": dict(sorted(self.outputs.items())),
        }


def atomic_write(path, text):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# -- input loading ------------------------------------------------------------


class Ctx:
    """Per-run bookkeeping: input digests and report parameters."""

    def __init__(self, command):
        self.manifest = RunManifest(command)

    def text_input(self, label, spec, bundled_pkg, suffix):
        """Read a bundled resource by name or a file by path, recording its digest."""
        from importlib import resources

        p = Path(spec)
        if p.exists():
            text = p.read_text(encoding="utf-8")
        else:
            res = resources.files(bundled_pkg).joinpath(spec + suffix)
            if not res.is_file():
                raise FileNotFoundError(f"{label} {spec!r}: no such file or bundled name")
            text = res.read_text(encoding="utf-8")
        self.manifest.inputs[f"{label}:{spec}"] = _sha256(text)
        return text

    def group(self, spec, max_rules=None):
        from .grouptool import group_from_text

        text = self.text_input("group", spec, "hypertile.data.groups", ".grp")
        name = Path(spec).stem
        return group_from_text(text, name, max_rules=max_rules)

    def tileset(self, spec):
        from .wang import TileSet

        text = self.text_input("tiles", spec, "hypertile.data.tiles", ".json")
        return TileSet.from_dict(_json(text, spec))

    def machine(self, spec):
        from .wang import TuringMachine

        text = self.text_input("machine", spec, "hypertile.data.machines", ".json")
        return TuringMachine.from_dict(_json(text, spec))

    def json_file(self, label, path):
        text = Path(path).read_text(encoding="utf-8")
        self.manifest.inputs[f"{label}:{path}"] = _sha256(text)
        return _json(text, path)


def _json(text, where):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{where}: {exc.msg}", exc.lineno, exc.colno) from None


def _range(text):
    try:
        lo, hi = text.split("..")
        return range(int(lo), int(hi) + 1)
    except ValueError:
        raise ValidationError(f"range must look like 0..6, got {text!r}") from None


def _fmt(group, w):
    return group.fmt(w) or "e"


# -- group commands -----------------------------------------------------------


def cmd_group(args, ctx):
    from .grouptool import ball, build_acceptor, growth_rate, sphere_counts

    g = ctx.group(args.file, getattr(args, "max_rules", None))
    gens = list(g.pres.generators)
    sub = args.sub
    if sub == "complete":
        rules = [[g.fmt(l), g.fmt(r) or ""] for l, r in g.rs.rules]
        report = {"generators": gens, "confluent": g.rs.confluent, "rules": rules}
        text = "\n".join(f"{l} -> {r or 'e'}" for l, r in rules) + f"\n{len(rules)} rules, confluent"
    elif sub == "reduce":
        words = {w: _fmt(g, g.parse(w)) for w in args.words}
        report = {"normal_forms": words}
        text = "\n".join(words.values())
    elif sub == "ball":
        if args.radius < 0:
            raise ValidationError("radius must be non-negative")
        b = ball(g.rs, args.radius)
        report = {
            "radius": args.radius,
            "sphere_sizes": b.sphere_sizes(),
            "vertices": [_fmt(g, v) for v in b.vertices],
        }
        text = f"{len(b)} vertices; spheres {' '.join(map(str, b.sphere_sizes()))}"
    elif sub == "acceptor":
        acc = build_acceptor(g.rs)
        if args.dot:
            return {"acceptor": acc.to_dict()}, acc.to_dot().rstrip("\n")
        report = {"acceptor": acc.to_dict()}
        counts = sphere_counts(acc, args.spheres)
        report["sphere_counts"] = counts
        text = f"{acc.n_states} states; spheres {' '.join(map(str, counts))}"
    elif sub == "growth":
        lam = growth_rate(g.acceptor)
        report = {"lambda": lam}
        text = f"{lam:.9f}"
    elif sub == "classify":
        acc = g.acceptor
        report = {"lambda": acc.lam, "acceptor": acc.to_dict(), "maximal": sorted(acc.maximal_states())}
        lines = [f"state {s}: {c}" for s, c in enumerate(acc.growth_class)]
        lines.append(f"maximal: {' '.join(str(s) for s in sorted(acc.maximal_states()))}")
        text = "\n".join(lines)
    else:  # pragma: no cover - argparse guards this
        raise ValidationError(sub)
    ctx.manifest.params.update({"group": g.name})
    return report, text


# -- tile commands ------------------------------------------------------------


def _tiling_dict(ts, rows, torus):
    return {
        "tileset": ts.name,
        "checksum": ts.checksum(),
        "width": len(rows[0]) if rows else 0,
        "height": len(rows),
        "torus": torus,
        "rows": [list(r) for r in rows],
    }


def _load_tiling(ctx, path, ts):
    d = ctx.json_file("tiling", path)
    rows = d.get("rows")
    if not isinstance(rows, list) or not rows:
        raise ValidationError("tiling file has no rows")
    if d.get("checksum") not in (None, ts.checksum()):
        raise ConsistencyError("tiling was produced for a different tile set")
    return rows, bool(d.get("torus", False))


def cmd_tile(args, ctx):
    from .wang import check_tiling, compile_tm, decode_run, tile_square, tile_torus
    from .wang.render import ascii_grid, svg

    sub = args.sub
    if sub == "compile-tm":
        tm = ctx.machine(args.machine)
        ts = compile_tm(tm)
        report = ts.to_dict()
        return report, f"{len(ts)} tiles, checksum {ts.checksum()}"
    ts = ctx.tileset(args.tiles)
    budget = args.budget
    if sub == "square":
        ctx.manifest.params.update({"n": args.n, "seeded": args.seeded, "budget": budget})
        rows = tile_square(ts, args.n, require_seed=args.seeded, budget=budget)
        if rows is None:
            raise NoResult("NONE (exhaustive)")
        return _tiling_dict(ts, rows, False), ascii_grid(ts, rows).rstrip("\n")
    if sub == "torus":
        ctx.manifest.params.update({"w": args.w, "h": args.h, "budget": budget})
        rows = tile_torus(ts, args.w, args.h, budget=budget)
        if rows is None:
            raise NoResult("NONE (exhaustive)")
        return _tiling_dict(ts, rows, True), ascii_grid(ts, rows).rstrip("\n")
    if sub == "decode":
        tm = ctx.machine(args.machine)
        rows, _ = _load_tiling(ctx, args.tiling, ts)
        history = decode_run(ts, rows, tm)
        report = {
            "machine": tm.name,
            "history": [{"state": c.state, "head": c.head, "tape": list(c.tape)} for c in history],
        }
        text = "\n".join(
            f"{c.state}@{c.head}: {''.join(c.tape)}" for c in history
        )
        return report, text
    if sub == "render":
        rows, torus = _load_tiling(ctx, args.tiling, ts)
        if not check_tiling(ts, rows, torus=torus):
            raise ConsistencyError("tiling does not match the tile set")
        if args.format == "svg":
            out = svg(ts, rows)
        else:
            out = ascii_grid(ts, rows)
        return {"format": args.format, "text": out}, out.rstrip("\n")
    raise ValidationError(sub)  # pragma: no cover


# -- shelling commands --------------------------------------------------------


def _window(group, patch, spec):
    """``ball`` (all of the patch), ``cone:WORD`` or ``quadrant`` (Z^2, x, y >= 1)."""
    if spec == "ball":
        return list(patch.vertices)
    if spec == "quadrant":
        return [v for v in patch.vertices if min(group.z2_coords(v)) >= 1]
    if spec.startswith("cone:"):
        from .aperiodic import future_cone

        root = group.parse(spec[5:])
        if root not in patch:
            raise MarginError(f"cone root {spec[5:]} is outside the patch")
        return sorted(future_cone(patch, root, patch.radius), key=lambda w: (len(w), w))
    raise ValidationError(f"unknown window {spec!r}; use ball, quadrant or cone:WORD")


def cmd_shell(args, ctx):
    from .shelling import (
        atlas_rejections,
        geodesic_parent_chains,
        gplus_density,
        integrate_h,
        label_ball,
        omega_s_atlas,
        translation_constant,
    )
    g = ctx.group(args.file)
    sub = args.sub
    ctx.manifest.params.update({"R": args.radius})
    patch = label_ball(g, args.radius)
    if sub == "label":
        report = patch.to_dict()
        if args.dot:
            return report, patch.to_dot().rstrip("\n")
        text = f"{len(patch.vertices)} vertices; states {len({l.state for l in patch.labels.values()})}"
        return report, text
    if sub == "atlas":
        atlas = omega_s_atlas(g, args.chart_radius, args.sample, patch=patch if args.sample is None else None)
        report = atlas.to_dict()
        report["params"] = {"R": args.chart_radius, "sample_radius": atlas.sample_radius}
        return report, f"{len(atlas)} charts of radius {args.chart_radius}"
    if sub == "check":
        h = integrate_h(g, {v: patch.labels[v].dh for v in patch.vertices}, basepoint=())
        bad_h = [v for v in patch.vertices if h[v] != patch.h[v]]
        bad_chain = geodesic_parent_chains(patch)
        bad_dense = gplus_density(patch)
        anti = []
        for v in patch.vertices:
            for a in range(g.rank):
                x = g.mul(v, (a,))
                if x in patch and patch.labels[v].dh[a] != -patch.labels[x].dh[g.inverse[a]]:
                    anti.append(v)
        atlas = omega_s_atlas(g, args.chart_radius, args.radius, patch=patch)
        bad_atlas = atlas_rejections(patch, atlas, args.chart_radius + 1)
        checks = {
            "integrate_h": not bad_h,
            "geodesic_parent_chains": not bad_chain,
            "dh_antisymmetry": not anti,
            "gplus_density": not bad_dense,
            "atlas_subwindows": not bad_atlas,
        }
        report = {"params": {"R": args.radius, "chart_radius": args.chart_radius, "delta": float(g.delta)},
                  "checks": checks}
        if not all(checks.values()):
            report["failures"] = {
                "integrate_h": [_fmt(g, v) for v in bad_h],
                "geodesic_parent_chains": [_fmt(g, v) for v in bad_chain],
                "dh_antisymmetry": [_fmt(g, v) for v in anti],
                "gplus_density": [_fmt(g, v) for v in bad_dense],
                "atlas_subwindows": [_fmt(g, v) for v in bad_atlas],
            }
            ctx.failed = True
        text = "\n".join(f"{k}: {'ok' if v else 'FAIL'}" for k, v in checks.items())
        return report, text
    if sub == "translate":
        t = g.parse(args.move)
        win = _window(g, patch, args.window or _default_cone(g, patch))
        h = {v: patch.h[v] for v in win}
        C = translation_constant(g, h, t)
        report = {"params": {"R": args.radius, "window": args.window or _default_cone(g, patch)},
                  "move": args.move, "C": C}
        return report, "C=none" if C is None else f"C={C}"
    raise ValidationError(sub)  # pragma: no cover


def _default_cone(group, patch):
    first = [v for v in patch.vertices if len(v) == 1]
    return "cone:" + group.fmt(first[0])


# -- aperiodic commands -------------------------------------------------------


def _delta_for(g, args, indices):
    from .aperiodic import delta_sequence, sturmian_delta
    from .grouptool import choose_q

    if args.alpha is not None:
        return sturmian_delta(float(args.alpha), indices, args.q or 2)
    acc = g.acceptor
    lam = acc.lam
    if lam is None or lam <= 1 + 1e-9:
        raise ValidationError(
            f"growth rate of {g.name} is {lam}; pass --alpha to supply an irrational level mean"
        )
    q = args.q or choose_q(lam, acc)
    return delta_sequence(lam, q, indices, acc)


def _pipeline(g, args, ctx):
    from .aperiodic import populate_patch
    from .shelling import label_ball

    patch = label_ball(g, args.radius)
    ds = _delta_for(g, args, range(0, args.radius + 1))
    pp, results = populate_patch(
        patch, ds, depth=args.depth, rho=_auto(args.rho, Fraction), N=_auto(args.N, int), threshold=args.threshold,
        max_steps=args.steps,
    )
    ctx.manifest.params.update(pp.params | {"R": args.radius, "alpha": float(ds.alpha)})
    return patch, pp, results


def cmd_aperiodic(args, ctx):
    from .aperiodic import (
        build_levels,
        check_connected,
        divergence_graph,
        lineage_check,
        lineage_from_matchings,
    )
    from .shelling import label_ball

    sub = args.sub
    if sub == "delta":
        from .aperiodic import delta_sequence, sturmian_delta

        idx = _range(args.range)
        if args.alpha is not None:
            ds = sturmian_delta(float(args.alpha), idx, args.q)
        else:
            if args.lam is None:
                raise ValidationError("give --lambda or --alpha")
            ds = delta_sequence(args.lam, args.q, idx)
        ctx.manifest.params.update({"q": args.q, "lambda": args.lam, "alpha": float(ds.alpha)})
        report = ds.to_dict()
        report["params"] = {"q": args.q, "lambda": args.lam, "range": args.range}
        return report, " ".join(map(str, ds.as_list()))

    g = ctx.group(args.file)
    if sub == "levels":
        patch = label_ball(g, args.radius)
        levels = build_levels(patch)
        report = {
            "params": {"R": args.radius},
            "levels": [
                {"index": lv.index, "size": len(lv.vertices), "gplus": [_fmt(g, v) for v in lv.gplus]}
                for lv in levels
            ],
        }
        text = "\n".join(f"level {lv.index}: {len(lv.vertices)} vertices, {len(lv.gplus)} in G+" for lv in levels)
        return report, text
    if sub == "divergence":
        radius = args.radius if args.radius is not None else args.level + args.depth
        patch = label_ball(g, radius)
        dg = divergence_graph(patch, args.level, args.depth, args.threshold)
        ok, comps = check_connected(dg)
        ctx.manifest.params.update({"R": radius, "D": args.depth, "threshold": dg.threshold})
        report = {
            "params": {"R": radius, "level": args.level, "D": args.depth, "threshold": dg.threshold},
            "vertices": [_fmt(g, v) for v in dg.vertices],
            "edges": [[_fmt(g, a), _fmt(g, b)] for a, b in sorted(dg.edges)],
            "components": comps,
            "connected": ok,
        }
        if args.dot:
            return report, dg.to_dot(g).rstrip("\n")
        return report, f"components: {comps}" + (" (>1)" if comps > 1 else "")
    if sub == "populate":
        patch, pp, _ = _pipeline(g, args, ctx)
        report = pp.to_dict()
        report["params"] = ctx.manifest.params | {"R": args.radius}
        total = sum(pp.pop.values())
        return report, f"{len(pp.pop)} G+ vertices, {total} villagers, N={pp.N}, rho={pp.params['rho']:g}"
    if sub == "match":
        patch, pp, results = _pipeline(g, args, ctx)
        rows = []
        lines = []
        for i in sorted(results):
            r = results[i]
            viol = None if r.hall_violator is None else [[_fmt(g, v), j, k] for v, j, k in r.hall_violator]
            rows.append({
                "level": i, "children": len(r.children), "slots": len(r.slots),
                "matched": len(r.matching), "saturated": r.saturated, "hall_violator": viol,
            })
            state = "saturated" if r.saturated else f"Hall violator of size {len(viol)}"
            lines.append(f"level {i}: {len(r.matching)}/{len(r.children)} children matched, {state}")
        return {"params": ctx.manifest.params, "levels": rows}, "\n".join(lines)
    if sub == "lineage":
        patch, pp, _ = _pipeline(g, args, ctx)
        start_level = args.level
        chain = [pp.matchings[i] for i in sorted(pp.matchings) if i >= start_level]
        starts = [v for v in build_levels(patch)[start_level].gplus]
        if not starts:
            raise NoResult(f"level {start_level} has no G+ vertices")
        v0 = g.parse(args.start) if args.start else starts[0]
        lin = lineage_from_matchings((v0, 0), chain)
        rep = lineage_check(patch, lin)
        report = {"params": ctx.manifest.params, "lineage": [_fmt(g, v) for v in lin], "report": rep.to_dict()}
        return report, (
            f"lineage of length {len(lin)}: {' '.join(_fmt(g, v) for v in lin)}\n"
            f"max step {rep.max_step} (bound {rep.step_bound:g}), fellow distance {rep.fellow_distance}, "
            f"{'ok' if rep.ok else 'FAIL'}"
        )
    if sub == "stabilizers":
        return _stabilizers(g, args, ctx)
    raise ValidationError(sub)  # pragma: no cover


def _stabilizers(g, args, ctx):
    from .aperiodic import (
        PopulatedPatch,
        build_levels,
        populate_levels,
        translate_matching,
        window_aperiodicity,
    )
    from .shelling import label_ball

    patch = label_ball(g, args.radius)
    levels = build_levels(patch)
    gplus = [v for lv in levels for v in lv.gplus]
    pop = populate_levels(levels, {v: 1 for v in gplus}, Fraction(args.rho), args.N)
    matching = translate_matching(patch, g.parse(args.step), pop)
    extra = max(len(g.parse(m)) for m in args.moves)
    ds = _delta_for(g, args, range(0, args.radius + extra + 1))
    pp = PopulatedPatch(patch, ds, pop, args.N, matching)
    window = [v for v in _window(g, patch, args.window) if patch.h[v] < args.radius]
    reports = window_aperiodicity(pp, [g.parse(m) for m in args.moves], window=window)
    ctx.manifest.params.update({"R": args.radius, "window": args.window, "step": args.step,
                                "N": args.N, "rho": args.rho, "q": ds.q, "alpha": float(ds.alpha)})
    rows = []
    lines = []
    for text, r in zip(args.moves, reports):
        rows.append({
            "move": text, "candidate": r.candidate, "C": r.C,
            "contradiction_level": r.contradiction_level, "stabilizer": r.stabilizer,
        })
        if not r.candidate:
            verdict = "labels differ"
        elif r.contradiction_level is not None:
            verdict = f"Delta contradiction at level {r.contradiction_level}"
        else:
            verdict = "preserves every label"
        lines.append(f"{text}: C={r.C} {verdict}")
    return {"params": ctx.manifest.params, "moves": rows}, "\n".join(lines)


# -- parser -------------------------------------------------------------------


def _common(p):
    p.add_argument("--json", action="store_true", help="print the JSON report instead of text")
    p.add_argument("--out", help="write the JSON report here (with a .manifest.json alongside)")


def _auto(value, kind):
    return value if value == "auto" else kind(value)


def _pop_args(p, radius=6):
    p.add_argument("file", help="presentation file or bundled group name")
    p.add_argument("--radius", type=int, default=radius)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--threshold", type=int)
    p.add_argument("--steps", type=int, default=3, help="divergence-graph steps a child may travel")
    p.add_argument("--rho", default="auto", help="target density, or auto")
    p.add_argument("--N", default="auto", help="population bound, or auto")
    p.add_argument("--q", type=int)
    p.add_argument("--alpha", help="explicit level mean (needed when the growth rate is 1)")


def build_parser():
    ap = argparse.ArgumentParser(prog="hypertile", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    areas = ap.add_subparsers(dest="area", required=True)

    grp = areas.add_parser("group", help="presentations, normal forms, acceptors, growth")
    gs = grp.add_subparsers(dest="sub", required=True)
    for name in ("complete", "reduce", "ball", "acceptor", "growth", "classify"):
        p = gs.add_parser(name)
        p.add_argument("file", help="presentation file or bundled group name")
        _common(p)
        if name == "complete":
            p.add_argument("--max-rules", type=int)
        if name == "reduce":
            p.add_argument("words", nargs="+")
        if name == "ball":
            p.add_argument("--radius", type=int, default=3)
        if name == "acceptor":
            p.add_argument("--dot", action="store_true")
            p.add_argument("--spheres", type=int, default=6)

    tile = areas.add_parser("tile", help="Wang tiles and Turing machines")
    ts = tile.add_subparsers(dest="sub", required=True)
    p = ts.add_parser("compile-tm")
    p.add_argument("machine", help="machine JSON file or bundled name")
    _common(p)
    for name in ("square", "torus", "decode", "render"):
        p = ts.add_parser(name)
        p.add_argument("tiles", help="tile set JSON file or bundled name")
        _common(p)
        p.add_argument("--budget", type=int, help="search node budget (default from HYPERTILE_BUDGET)")
    ts.choices["square"].add_argument("--n", type=int, required=True)
    ts.choices["square"].add_argument("--seeded", action="store_true")
    ts.choices["torus"].add_argument("--w", type=int, required=True)
    ts.choices["torus"].add_argument("--h", type=int, required=True)
    ts.choices["decode"].add_argument("tiling")
    ts.choices["decode"].add_argument("machine")
    ts.choices["render"].add_argument("tiling")
    ts.choices["render"].add_argument("--format", choices=("ascii", "svg"), default="ascii")

    sh = areas.add_parser("shell", help="shortlex shellings")
    ss = sh.add_subparsers(dest="sub", required=True)
    for name in ("label", "atlas", "check", "translate"):
        p = ss.add_parser(name)
        p.add_argument("file", help="presentation file or bundled group name")
        p.add_argument("--radius", type=int, default=6)
        _common(p)
    ss.choices["label"].add_argument("--dot", action="store_true")
    ss.choices["atlas"].add_argument("--chart-radius", type=int, default=1)
    ss.choices["atlas"].add_argument("--sample", type=int)
    ss.choices["check"].add_argument("--chart-radius", type=int, default=1)
    ss.choices["translate"].add_argument("--move", required=True)
    ss.choices["translate"].add_argument("--window", help="ball, quadrant or cone:WORD (default: cone of the first generator)")

    ape = areas.add_parser("aperiodic", help="levels, divergence graphs, Delta, populations, matchings")
    aps = ape.add_subparsers(dest="sub", required=True)
    p = aps.add_parser("levels")
    p.add_argument("file")
    p.add_argument("--radius", type=int, default=6)
    _common(p)
    p = aps.add_parser("divergence")
    p.add_argument("file")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--depth", type=int, default=5)
    p.add_argument("--threshold", type=int)
    p.add_argument("--radius", type=int, help="ball radius (default level + depth)")
    p.add_argument("--dot", action="store_true")
    _common(p)
    p = aps.add_parser("delta")
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--alpha")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--range", default="0..20")
    _common(p)
    for name in ("populate", "match", "lineage"):
        p = aps.add_parser(name)
        _pop_args(p)
        _common(p)
    aps.choices["lineage"].add_argument("--level", type=int, default=1)
    aps.choices["lineage"].add_argument("--start", help="starting vertex (default: first G+ vertex)")
    p = aps.add_parser("stabilizers")
    p.add_argument("file")
    p.add_argument("--radius", type=int, default=20)
    p.add_argument("--moves", nargs="+", required=True)
    p.add_argument("--window", default="quadrant")
    p.add_argument("--step", default="b", help="generator the constructed matching follows")
    p.add_argument("--rho", default="1")
    p.add_argument("--N", type=int, default=8)
    p.add_argument("--q", type=int)
    p.add_argument("--alpha")
    _common(p)
    return ap


def _exit_code(exc):
    if isinstance(exc, NoResult):
        return EXIT_NONE
    if isinstance(exc, BudgetExceeded):
        return EXIT_BUDGET
    if isinstance(exc, (ConsistencyError, NotConfluentError)):
        return EXIT_CONSISTENCY
    if isinstance(exc, (ParseError, ValidationError, MarginError, InfeasibleError, FiniteGroupError,
                        FileNotFoundError, KeyError, ValueError, HypertileError)):
        return EXIT_INPUT
    return None


def main(argv=None):
    args = build_parser().parse_args(argv)
    ctx = Ctx(f"{args.area} {args.sub}")
    ctx.failed = False
    handlers = {"group": cmd_group, "tile": cmd_tile, "shell": cmd_shell, "aperiodic": cmd_aperiodic}
    try:
        report, text = handlers[args.area](args, ctx)
    except Exception as exc:  # noqa: BLE001 - mapped to exit codes below
        code = _exit_code(exc)
        if code is None:
            raise
        if code == EXIT_NONE:
            print(str(exc))
            return code
        err = {"error": type(exc).__name__, "message": str(exc), "exit": code, "command": ctx.manifest.command}
        if isinstance(exc, ParseError):
            err["line"], err["column"] = exc.line, exc.column
        if isinstance(exc, BudgetExceeded):
            err["nodes"] = exc.nodes
        print(json.dumps(err, sort_keys=True), file=sys.stderr)
        return code
    report = {"command": ctx.manifest.command, **report}
    body = dumps(report)
    if args.out:
        atomic_write(args.out, body)
        ctx.manifest.outputs[Path(args.out).name] = _sha256(body)
        atomic_write(str(args.out) + ".manifest.json", dumps(ctx.manifest.to_dict()))
    print(body.rstrip("\n") if args.json else text)
    return EXIT_CONSISTENCY if ctx.failed else EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
