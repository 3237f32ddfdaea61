from muntz_sdk.constructive.approximant import MuntzAbsApproximant, MuntzApproximant
from muntz_sdk.constructive.schemas import ConvergenceRow
from muntz_sdk.core.grid import Grid
from muntz_sdk.core.polynomial import GeneralizedPolynomial, Interval, Term
from muntz_sdk.core.quadrature import QuadratureScheme
from muntz_sdk.core.sequences import ExponentSequence, SequenceKind
from muntz_sdk.gram.determinants import GramMatrix
from muntz_sdk.gram.schemas import DistanceMethod, DistanceReport, ProjectionResult
from muntz_sdk.muntz.schemas import ConditionStatus, DensityVerdict, EvidenceRow, ProductSumRow, ProfileRow, Verdict
from muntz_sdk.primes.euler import EulerReport
from muntz_sdk.primes.moments import MomentVanishingReport
from muntz_sdk.weierstrass.iteration import AbsApproximant, SqrtIterate
from muntz_sdk.weierstrass.lattice import LatticeApproximants
from muntz_sdk.weierstrass.schemas import BoundViolation, ErrorCertificate


__all__ = [
    "AbsApproximant",
    "BoundViolation",
    "ConditionStatus",
    "ConvergenceRow",
    "DensityVerdict",
    "DistanceMethod",
    "DistanceReport",
    "ErrorCertificate",
    "EulerReport",
    "EvidenceRow",
    "ExponentSequence",
    "GeneralizedPolynomial",
    "GramMatrix",
    "Grid",
    "Interval",
    "LatticeApproximants",
    "MomentVanishingReport",
    "MuntzAbsApproximant",
    "MuntzApproximant",
    "ProductSumRow",
    "ProfileRow",
    "ProjectionResult",
    "QuadratureScheme",
    "SequenceKind",
    "SqrtIterate",
    "Term",
    "Verdict",
]
