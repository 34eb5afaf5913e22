"""Group presentations, shortlex rewriting, Cayley balls and word acceptors."""

from .acceptor import FINITE, MAXIMAL, SUBMAXIMAL, WordAcceptor, build_acceptor
from .cayley import CayleyBall, ball, cay_dist, word_length
from .growth import (
    characteristic_polynomial,
    choose_q,
    classify_states,
    exponent_collisions,
    growth_rate,
    sphere_counts,
    state_measure,
    transition_matrix,
)
from .presentation import GroupPresentation, free_group, parse_presentation
from .group import Group, group_from_text, load_group
from .rewriting import RewritingSystem, kb_complete, reduce

__all__ = [
    "CayleyBall",
    "FINITE",
    "Group",
    "GroupPresentation",
    "MAXIMAL",
    "RewritingSystem",
    "SUBMAXIMAL",
    "WordAcceptor",
    "ball",
    "build_acceptor",
    "cay_dist",
    "characteristic_polynomial",
    "choose_q",
    "classify_states",
    "exponent_collisions",
    "free_group",
    "group_from_text",
    "growth_rate",
    "kb_complete",
    "load_group",
    "parse_presentation",
    "reduce",
    "sphere_counts",
    "state_measure",
    "transition_matrix",
    "word_length",
]
