import logging
from typing import List

from typing_extensions import Annotated, Doc

from ..core.sequences import ExponentSequence
from ..errors.exceptions import InputRejectedError
from ..gram.distance import distance_to_span
from .schemas import ProfileRow


logger = logging.getLogger(__name__)


def distance_profile(
    q: Annotated[float, Doc("Target exponent, positive")],
    sequence: Annotated[ExponentSequence, Doc("Exponent sequence not containing q")],
    n_max: Annotated[int, Doc("Last span size index")],
) -> List[ProfileRow]:
    """Rows (n, δ_n) with δ_n the L² distance from x^q to span{x^λ_0, ..., x^λ_n}.

    The spans are nested, so δ_n is nonincreasing whatever the order of the exponents.

    Raises:
        InputRejectedError: If q ≤ 0, n_max < 0, or q equals one of λ_0..λ_{n_max}.
    """
    if not q > 0:
        raise InputRejectedError("Target exponent q must be positive", details={"q": q})
    if n_max < 0:
        raise InputRejectedError("n_max must be non-negative", details={"n_max": n_max})
    values = sequence.values(n_max)
    if q in values:
        index = values.index(q)
        raise InputRejectedError(
            f"q = {q} equals λ_{index}; the distance vanishes from n = {index} on",
            details={"q": q, "index": index},
        )

    logger.info(f"Distance profile of x^{q:g} against {sequence.describe()} up to n = {n_max}")
    return [
        ProfileRow(n=n, delta=distance_to_span(q, values[: n + 1], estimate_condition=False).delta)
        for n in range(n_max + 1)
    ]
