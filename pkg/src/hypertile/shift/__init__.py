"""Subshifts of finite type: atlases, nearest-neighbour recoding, searches, periodic points."""

from .periodic import (
    check_torus,
    inner_domain,
    is_periodic_word,
    torus_point_z2,
    window_stabilizer,
    z_periodic_point,
)
from .search import BinaryCSP, default_budget
from .sft import (
    Alphabet,
    NnSft,
    Patch,
    SftSpec,
    center_order,
    charts_to_nn,
    check_patch,
    extend_patch,
    load_sft,
    nn_to_labels,
)

__all__ = [
    "Alphabet", "BinaryCSP", "NnSft", "Patch", "SftSpec", "center_order", "charts_to_nn",
    "check_patch", "check_torus", "default_budget", "extend_patch", "inner_domain",
    "is_periodic_word", "load_sft", "nn_to_labels", "torus_point_z2", "window_stabilizer",
    "z_periodic_point",
]
