from .approximant import (
    MuntzAbsApproximant,
    MuntzApproximant,
    abs_via_muntz,
    product_bound,
    qn_coefficients,
    qn_convergence_report,
)
from .oracle import QnOracle, qn_oracle
from .schemas import ConvergenceRow


__all__ = [
    "ConvergenceRow",
    "MuntzAbsApproximant",
    "MuntzApproximant",
    "QnOracle",
    "abs_via_muntz",
    "product_bound",
    "qn_coefficients",
    "qn_convergence_report",
    "qn_oracle",
]
