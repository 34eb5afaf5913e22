import json

import jsonschema
from referencing import Registry, Resource

from hypertile.cli import main
from hypertile.schemas import NAMES, load_schema


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    assert code == 0, err
    return json.loads(out)


REGISTRY = Registry().with_resources(
    (f"{n}.json", Resource.from_contents(load_schema(n))) for n in NAMES
)


def validate(doc, name):
    jsonschema.Draft202012Validator(load_schema(name), registry=REGISTRY).validate(doc)


def test_schemas_are_valid():
    for name in NAMES:
        jsonschema.Draft202012Validator.check_schema(load_schema(name))


def test_group_growth(capsys):
    code, out, _ = run(capsys, "group", "growth", "f2")
    assert code == 0 and "3.000000000" in out


def test_group_acceptor_schema(capsys):
    doc = run_json(capsys, "group", "acceptor", "z2")
    validate(doc, "report")
    validate(doc["acceptor"], "acceptor")
    assert doc["acceptor"]["states"] == 5


def test_group_reduce(capsys):
    code, out, _ = run(capsys, "group", "reduce", "z2", "abAB")
    assert code == 0 and out.split()[-1] == "e"


def test_parse_error_exit_code(capsys):
    code, out, err = run(capsys, "group", "reduce", "z2", "ax")
    assert code == 2
    doc = json.loads(err)
    validate(doc, "error")
    assert doc["error"] == "ParseError" and doc["column"] >= 1


def test_missing_group_is_input_error(capsys):
    code, _, err = run(capsys, "group", "growth", "no-such-group")
    assert code == 2
    validate(json.loads(err), "error")


def test_tile_outputs(capsys):
    validate(run_json(capsys, "tile", "compile-tm", "halt3"), "tileset")
    doc = run_json(capsys, "tile", "square", "checker", "--n", "2")
    validate(doc, "tiling")
    doc = run_json(capsys, "tile", "torus", "checker", "--w", "2", "--h", "2")
    validate(doc, "tiling")


def test_torus_none_exit_code(capsys):
    code, out, _ = run(capsys, "tile", "torus", "robinson", "--w", "4", "--h", "4")
    assert code == 1 and "NONE" in out


def test_budget_exit_code(capsys):
    code, _, err = run(capsys, "tile", "square", "robinson", "--n", "8", "--budget", "3")
    assert code == 4
    doc = json.loads(err)
    validate(doc, "error")
    assert doc["nodes"] >= 3


def test_decode_roundtrip_and_mismatch(tmp_path, capsys):
    ts_file = tmp_path / "tm.json"
    tiling = tmp_path / "sq.json"
    assert run(capsys, "tile", "compile-tm", "halt3", "--out", str(ts_file))[0] == 0
    assert run(capsys, "tile", "square", str(ts_file), "--n", "4", "--seeded", "--out", str(tiling))[0] == 0
    code, out, _ = run(capsys, "tile", "decode", str(ts_file), str(tiling), "halt3")
    assert code == 0
    code, _, err = run(capsys, "tile", "decode", str(ts_file), str(tiling), "right")
    assert code == 3
    validate(json.loads(err), "error")


def test_render(tmp_path, capsys):
    tiling = tmp_path / "sq.json"
    assert run(capsys, "tile", "square", "checker", "--n", "2", "--out", str(tiling))[0] == 0
    code, out, _ = run(capsys, "tile", "render", "checker", str(tiling), "--format", "svg")
    assert code == 0 and out.lstrip().startswith("<svg")
    code, out, _ = run(capsys, "tile", "render", "checker", str(tiling))
    assert code == 0 and "legend" in out


def test_shell_commands(capsys):
    validate(run_json(capsys, "shell", "label", "z2", "--radius", "2"), "shelling")
    code, out, _ = run(capsys, "shell", "translate", "z", "--move", "a^3")
    assert code == 0 and "C=3" in out
    code, out, err = run(capsys, "shell", "check", "z2", "--radius", "5")
    assert code == 0, out + err


def test_aperiodic_delta(capsys):
    code, out, _ = run(capsys, "aperiodic", "delta", "--lambda", "3", "--q", "2", "--range", "0..6")
    assert code == 0 and out.split() == "1 2 1 2 1 2 2".split()
    validate(run_json(capsys, "aperiodic", "delta", "--lambda", "3", "--q", "2", "--range", "0..6"), "delta")
    code, _, err = run(capsys, "aperiodic", "delta", "--lambda", "4", "--q", "2", "--range", "0..6")
    assert code == 2


def test_aperiodic_divergence(capsys):
    code, out, _ = run(capsys, "aperiodic", "divergence", "f2", "--level", "3")
    assert code == 0 and "components: 36" in out


def test_aperiodic_populate_schema(capsys):
    doc = run_json(capsys, "aperiodic", "populate", "f2", "--radius", "5", "--depth", "2")
    validate(doc, "populated")


def test_out_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    argv = ["aperiodic", "populate", "z2", "--radius", "6", "--depth", "3", "--alpha", "1.584962500721156"]
    assert run(capsys, *argv, "--out", str(a))[0] == 0
    assert run(capsys, *argv, "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    man = json.loads((tmp_path / "a.json.manifest.json").read_text())
    validate(man, "manifest")
    assert "a.json" in man["outputs"]
