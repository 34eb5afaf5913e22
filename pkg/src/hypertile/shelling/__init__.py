"""Shortlex shellings: labels, horofunctions, Omega_S atlases, translation constants."""

from .labels import (
    DEFAULT_R,
    IntegrationError,
    OmegaSAtlas,
    ShellingLabel,
    ShellingPatch,
    atlas_rejections,
    chart_at,
    geodesic_parent_chains,
    gplus_density,
    integrate_h,
    label_ball,
    omega_s_atlas,
    translation_constant,
)

__all__ = [
    "DEFAULT_R", "IntegrationError", "OmegaSAtlas", "ShellingLabel", "ShellingPatch", "atlas_rejections", "chart_at",
    "geodesic_parent_chains", "gplus_density", "integrate_h", "label_ball", "omega_s_atlas",
    "translation_constant",
]
