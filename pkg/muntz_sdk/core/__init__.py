from .grid import Grid
from .polynomial import L2_EXPONENT_FLOOR, GeneralizedPolynomial, Interval, Term, canonical_terms, sup_norm_estimate
from .quadrature import DEFAULT_SCHEME, QuadratureScheme, breakpoints, gauss_legendre, integrate, panel_rule
from .sequences import ExponentSequence, SequenceKind


__all__ = [
    "L2_EXPONENT_FLOOR",
    "DEFAULT_SCHEME",
    "ExponentSequence",
    "GeneralizedPolynomial",
    "Grid",
    "Interval",
    "QuadratureScheme",
    "SequenceKind",
    "Term",
    "breakpoints",
    "canonical_terms",
    "gauss_legendre",
    "integrate",
    "panel_rule",
    "sup_norm_estimate",
]
