from .density import density_check, evidence_table, product_sum_table, running_sums
from .profile import distance_profile
from .schemas import ConditionStatus, DensityVerdict, EvidenceRow, ProductSumRow, ProfileRow, Verdict


__all__ = [
    "ConditionStatus",
    "DensityVerdict",
    "EvidenceRow",
    "ProductSumRow",
    "ProfileRow",
    "Verdict",
    "density_check",
    "distance_profile",
    "evidence_table",
    "product_sum_table",
    "running_sums",
]
