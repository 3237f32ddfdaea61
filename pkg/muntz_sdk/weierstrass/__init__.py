from .iteration import AbsApproximant, SqrtIterate, abs_approximant, sqrt_error_certificate, sqrt_iterate
from .lattice import LatticeApproximants, lattice_max_min
from .schemas import BoundViolation, ErrorCertificate


__all__ = [
    "AbsApproximant",
    "BoundViolation",
    "ErrorCertificate",
    "LatticeApproximants",
    "SqrtIterate",
    "abs_approximant",
    "lattice_max_min",
    "sqrt_error_certificate",
    "sqrt_iterate",
]
