"""The seeded {C, L, R} line: a strongly aperiodic toy SFT on Z once C is required."""

from ..grouptool import load_group
from ..shift.search import BinaryCSP
from ..shift.sft import NnSft, Patch

C, L, R = 0, 1, 2


def seeded_line_sft():
    """Tiles C, L, R with allowed east-neighbours C-R, L-C, R-R, L-L; C is the seed."""
    z = load_group("z")
    pairs = {"a": [(C, R), (L, C), (R, R), (L, L)]}
    return NnSft(3, z, pairs, names=("C", "L", "R"), seeds=(C,))


def seeded_windows(sft, length, require_seed=True):
    """Every valid labelling of ``0..length-1`` as a tuple of tile indices."""
    csp = BinaryCSP.uniform(length, sft.n_tiles)
    for k in range(length - 1):
        csp.add(k, k + 1, sft.allowed("a"))
    out = []
    for sol in csp.solutions():
        if not require_seed or any(v in sft.seeds for v in sol):
            out.append(tuple(sol))
    return out


def window_patch(sft, word):
    """Patch on ``a^0 .. a^(n-1)`` carrying ``word``."""
    z = sft.group
    return Patch({z.z(k): v for k, v in enumerate(word)})
