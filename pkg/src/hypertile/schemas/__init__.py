"""JSON schemas for the files the command-line tool writes."""

import json
from importlib import resources

NAMES = ("acceptor", "delta", "error", "machine", "manifest", "populated", "report", "shelling", "tileset", "tiling")


def load_schema(name):
    if name not in NAMES:
        raise KeyError(f"no schema {name!r}")
    return json.loads(resources.files(__name__).joinpath(f"{name}.json").read_text())
