"""Aperiodicity layer: levels, divergence graphs, Delta, populations, matchings, lineages."""

from .delta import (
    DeltaSequence,
    beatty_differences,
    check_nonperiodic,
    delta_sequence,
    log_ratio,
    window_mean,
)
from .levels import (
    DEFAULT_DEPTH,
    DivergenceGraph,
    LevelSet,
    build_levels,
    check_connected,
    default_threshold,
    divergence_graph,
    future_cone,
    generations,
)
from .instances import random_two_level
from .lineage import LineageReport, lineage_check, lineage_from_matchings
from .matching import DIV_STEPS, MatchResult, match_generations, max_matching, solve_bipartite
from .populated import (
    MoveReport,
    PopulatedPatch,
    populate_patch,
    sturmian_delta,
    translate_matching,
    window_aperiodicity,
)
from .population import (
    DEFAULT_N,
    DEFAULT_RHO,
    auto_parameters,
    drift_ok,
    level_densities,
    populate_levels,
    vertex_measure,
)

__all__ = [
    "DEFAULT_DEPTH",
    "DEFAULT_N",
    "DEFAULT_RHO",
    "DIV_STEPS",
    "DeltaSequence",
    "DivergenceGraph",
    "LevelSet",
    "LineageReport",
    "MatchResult",
    "MoveReport",
    "PopulatedPatch",
    "auto_parameters",
    "beatty_differences",
    "build_levels",
    "check_connected",
    "check_nonperiodic",
    "default_threshold",
    "delta_sequence",
    "divergence_graph",
    "drift_ok",
    "future_cone",
    "generations",
    "level_densities",
    "lineage_check",
    "lineage_from_matchings",
    "log_ratio",
    "match_generations",
    "max_matching",
    "populate_levels",
    "populate_patch",
    "random_two_level",
    "solve_bipartite",
    "sturmian_delta",
    "translate_matching",
    "vertex_measure",
    "window_aperiodicity",
    "window_mean",
]
