"""Constant-curvature model spaces, comparison triangles, regular simplices and doubles."""

from .double import double_distance, double_distance_matrix, double_radius
from .models import (
    KINDS,
    SIMPLEX_K_MAX,
    ModelPoint,
    ModelSpaceSpec,
    geodesic_point,
    model_distance,
    projective_distance,
    sf_distance,
)
from .sampling import model_metric_space, sample_model_space, sample_points
from .simplex import SimplexGeometry, inradius, regular_simplex, solve_kn
from .trig import ComparisonTriangle, comparison_distance, comparison_triangle, law_of_cosines

__all__ = [
    "KINDS", "SIMPLEX_K_MAX", "ModelPoint", "ModelSpaceSpec", "geodesic_point",
    "model_distance", "projective_distance", "sf_distance", "double_distance",
    "double_distance_matrix", "double_radius", "model_metric_space", "sample_model_space",
    "sample_points", "SimplexGeometry", "inradius", "regular_simplex", "solve_kn",
    "ComparisonTriangle", "comparison_distance", "comparison_triangle", "law_of_cosines",
]
