"""Density diagnostics: products against series, and the Müntz conditions per sequence family."""

import logging
import math
from typing import Callable, Iterable, List, Sequence, Tuple, Union

from typing_extensions import Annotated, Doc

from ..core.sequences import ExponentSequence, SequenceKind
from ..errors.exceptions import InputRejectedError
from .schemas import ConditionStatus, DensityVerdict, EvidenceRow, ProductSumRow, Verdict


logger = logging.getLogger(__name__)

TermSource = Union[Callable[[int], float], Sequence[float]]


def running_sums(values: Iterable[float]) -> List[float]:
    """Prefix sums with Neumaier compensation."""
    sums = []
    total, compensation = 0.0, 0.0
    for value in values:
        t = total + value
        if abs(total) >= abs(value):
            compensation += (total - t) + value
        else:
            compensation += (value - t) + total
        total = t
        sums.append(total + compensation)
    return sums


def _terms(a: TermSource, n_max: int, start: int) -> List[Tuple[int, float]]:
    indices = range(start, n_max + 1)
    if callable(a):
        return [(i, float(a(i))) for i in indices]
    if len(a) < len(indices):
        raise InputRejectedError(
            f"Need {len(indices)} terms a_{start}..a_{n_max}, got {len(a)}",
            details={"available": len(a), "requested": len(indices)},
        )
    return [(i, float(value)) for i, value in zip(indices, a)]


def product_sum_table(
    a: Annotated[TermSource, Doc("Callable i -> a_i, or the values a_start, a_start+1, ...")],
    n_max: Annotated[int, Doc("Last index of the table")],
    start: Annotated[int, Doc("Index of the first term")] = 1,
) -> List[ProductSumRow]:
    """Rows (n, ∏_{start≤i≤n} (1 - 1/a_i), Σ_{start≤i≤n} 1/a_i) for n = start..n_max.

    For a_i > 1 the product tends to 0 exactly when the series diverges. The
    product is accumulated as a sum of log(1 - 1/a_i).

    Raises:
        InputRejectedError: If n_max < start, or some a_i ≤ 1 (the index is named).
    """
    if n_max < start:
        raise InputRejectedError(f"n_max must be at least {start}", details={"n_max": n_max, "start": start})
    terms = _terms(a, n_max, start)
    for i, value in terms:
        if not math.isfinite(value) or value <= 1.0:
            raise InputRejectedError(f"Term a_{i} = {value} must be greater than 1", details={"index": i, "a": value})

    log_products = running_sums(math.log1p(-1.0 / value) for _, value in terms)
    sums = running_sums(1.0 / value for _, value in terms)
    logger.debug(f"Product/sum table over indices {start}..{n_max}")
    return [
        ProductSumRow(n=i, product=math.exp(log_product), sum=partial)
        for (i, _), log_product, partial in zip(terms, log_products, sums)
    ]


def evidence_table(values: Sequence[float]) -> List[EvidenceRow]:
    """Partial sums of both Müntz series over λ_0..λ_n; λ = 0 contributes nothing."""
    positive = [v if v > 0 else math.inf for v in values]
    reciprocal = running_sums(1.0 / v if math.isfinite(v) else 0.0 for v in positive)
    full = running_sums(v / (v * v + 1.0) if math.isfinite(v) else 0.0 for v in positive)
    return [EvidenceRow(n=n, reciprocal_sum=r, full_sum=f) for n, (r, f) in enumerate(zip(reciprocal, full))]


def _family_conditions(sequence: ExponentSequence) -> Tuple[ConditionStatus, ConditionStatus, str]:
    kind = sequence.kind
    if kind == SequenceKind.CUSTOM and sequence.tail is not None:
        classical, full, note = _family_conditions(sequence.tail)
        return classical, full, f"decided by the tail {sequence.tail.describe()}; {note}"
    if kind == SequenceKind.AFFINE:
        return ConditionStatus.DIVERGES, ConditionStatus.DIVERGES, "Σ 1/(a·i + b) diverges like the harmonic series"
    if kind == SequenceKind.PRIMES:
        return ConditionStatus.DIVERGES, ConditionStatus.DIVERGES, "Σ 1/p diverges (Euler)"
    if kind == SequenceKind.POWER:
        k = sequence.power
        if k > 0:
            status = ConditionStatus.DIVERGES if k <= 1 else ConditionStatus.CONVERGES
            return status, status, f"Σ 1/i^{k:g} {status.value}"
        # i^k with k < 0 accumulates at 0, where λ/(λ² + 1) behaves like i^k
        full = ConditionStatus.DIVERGES if k >= -1 else ConditionStatus.CONVERGES
        return (
            ConditionStatus.INCONCLUSIVE,
            full,
            f"exponents accumulate at 0, classical condition not applicable; Σ i^{k:g} {full.value}",
        )
    return (
        ConditionStatus.INCONCLUSIVE,
        ConditionStatus.INCONCLUSIVE,
        "finite list; partial sums cannot decide divergence",
    )


_VERDICTS = {
    ConditionStatus.DIVERGES: Verdict.DENSE,
    ConditionStatus.CONVERGES: Verdict.NOT_DENSE,
    ConditionStatus.INCONCLUSIVE: Verdict.INCONCLUSIVE,
}


def density_check(
    sequence: Annotated[ExponentSequence, Doc("Exponent sequence; only λ_0 may be 0")],
    n_max: Annotated[int, Doc("Last index of the evidence table")] = 100,
) -> DensityVerdict:
    """Decide whether span{x^λ_i} is dense in C[0, 1].

    Symbolic families are decided from their known divergence class; explicit
    lists are inconclusive unless a symbolic tail was attached. The verdict
    follows the full condition Σ λ_i/(λ_i² + 1) = ∞. When 0 is not among the
    exponents, the verdict is about the span with the constant function adjoined.

    Raises:
        InputRejectedError: If n_max < 0 or some λ_i with i > 0 is not positive.
    """
    if n_max < 0:
        raise InputRejectedError("n_max must be non-negative", details={"n_max": n_max})
    count = n_max
    if sequence.kind == SequenceKind.EXPLICIT:
        count = min(n_max, len(sequence.explicit) - 1)
    values = sequence.values(count) if count >= 0 else ()
    for index, value in enumerate(values):
        if value < 0 or (value == 0 and index > 0):
            raise InputRejectedError(
                f"Exponent λ_{index} = {value} must be positive", details={"index": index, "exponent": value}
            )

    classical, full, note = _family_conditions(sequence)
    constant_adjoined = not (values and values[0] == 0)
    if constant_adjoined:
        note += "; 0 is not an exponent, so the constant function is adjoined"
    verdict = _VERDICTS[full]
    logger.info(f"Density of {sequence.describe()}: {verdict.value} (classical {classical.value}, full {full.value})")
    return DensityVerdict(
        sequence=sequence,
        classical_condition=classical,
        full_condition=full,
        verdict=verdict,
        evidence=evidence_table(values),
        constant_adjoined=constant_adjoined,
        note=note,
    )
