from .determinants import (
    GramMatrix,
    cauchy_determinant,
    check_exponents,
    gram_determinant_bruteforce,
    gram_matrix,
    rational_exponents,
)
from .distance import closed_form_distance, distance_to_span, distance_via_float_gram, distance_via_gram_ratio
from .projection import project_l2
from .schemas import DistanceMethod, DistanceReport, ProjectionResult


__all__ = [
    "DistanceMethod",
    "DistanceReport",
    "GramMatrix",
    "ProjectionResult",
    "cauchy_determinant",
    "check_exponents",
    "closed_form_distance",
    "distance_to_span",
    "distance_via_float_gram",
    "distance_via_gram_ratio",
    "gram_determinant_bruteforce",
    "gram_matrix",
    "project_l2",
    "rational_exponents",
]
