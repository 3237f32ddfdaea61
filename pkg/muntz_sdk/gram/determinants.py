"""Gram matrices of monomials in L²[0,1], their determinants, and the Cauchy closed form."""

import logging
import math
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict

from ..core.polynomial import L2_EXPONENT_FLOOR
from ..errors.exceptions import InputRejectedError


logger = logging.getLogger(__name__)

# Larger products go through logarithms.
DIRECT_PRODUCT_LIMIT = 30
GRAM_ORACLE_LIMIT = 8

Rational = Union[Fraction, int, float, str]


def check_exponents(exponents: Iterable[float]) -> Tuple[float, ...]:
    """Validate a list of span exponents: finite, pairwise distinct and greater than -1/2.

    Raises:
        InputRejectedError: Naming the first offending exponent.
    """
    values = tuple(float(v) for v in exponents)
    seen = set()
    for index, value in enumerate(values):
        if not math.isfinite(value) or value <= L2_EXPONENT_FLOOR:
            raise InputRejectedError(
                f"Exponent λ_{index} = {value} must be finite and greater than -1/2",
                details={"index": index, "exponent": value},
            )
        if value in seen:
            raise InputRejectedError(
                f"Exponent {value} appears more than once", details={"index": index, "exponent": value}
            )
        seen.add(value)
    return values


class GramMatrix(BaseModel):
    """Gram matrix of the monomials x^λ_i in L²[0,1], with entries 1/(λ_i + λ_j + 1)."""

    exponents: Tuple[float, ...]

    model_config = ConfigDict(frozen=True)

    @property
    def entries(self) -> NDArray[np.float64]:
        column = np.asarray(self.exponents, dtype=float)
        return 1.0 / (column[:, None] + column[None, :] + 1.0)

    def condition(self) -> float:
        """2-norm condition estimate; grows like a Hilbert matrix's, about 1e13 at eight exponents."""
        if not self.exponents:
            return 1.0
        return float(np.linalg.cond(self.entries))

    def most_collinear_pair(self) -> Tuple[float, float]:
        """The pair whose normalized monomials have the largest cosine √((2a+1)(2b+1))/(a+b+1)."""
        if len(self.exponents) < 2:
            raise InputRejectedError("A pair needs at least two exponents")
        best, pair = -1.0, (self.exponents[0], self.exponents[1])
        for i, a in enumerate(self.exponents):
            for b in self.exponents[i + 1 :]:
                cosine = math.sqrt((2 * a + 1) * (2 * b + 1)) / (a + b + 1)
                if cosine > best:
                    best, pair = cosine, (a, b)
        return pair


def gram_matrix(exponents: Iterable[float]) -> GramMatrix:
    """Build the Gram matrix of validated exponents.

    Raises:
        InputRejectedError: If an exponent repeats or is at most -1/2.
    """
    return GramMatrix(exponents=check_exponents(exponents))


def _pair_factors(x: Sequence[float], y: Sequence[float]) -> List[float]:
    # Each pair contributes (x_j - x_i)(y_j - y_i) / ((x_i + y_j)(x_j + y_i)), the diagonal 1/(x_j + y_j);
    # grouping them keeps every factor near unit scale.
    factors = []
    for j in range(len(x)):
        factors.append(1.0 / (x[j] + y[j]))
        for i in range(j):
            factors.append((x[j] - x[i]) * (y[j] - y[i]) / ((x[i] + y[j]) * (x[j] + y[i])))
    return factors


def _sorted_with_parity(values: Sequence[float]) -> Tuple[List[float], int]:
    order = sorted(range(len(values)), key=lambda k: values[k])
    sign, seen = 1, [False] * len(order)
    for start in range(len(order)):
        if seen[start]:
            continue
        length, k = 0, start
        while not seen[k]:
            seen[k] = True
            k = order[k]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return [values[k] for k in order], sign


def cauchy_determinant(x: Sequence[float], y: Sequence[float]) -> float:
    """Determinant of the Cauchy matrix [1/(x_i + y_j)] from its closed form.

    det = ∏_{i<j} (x_j - x_i)(y_j - y_i) / ∏_{i,j} (x_i + y_j). Both inputs are
    sorted first and the permutation signs applied afterwards, so swapping two
    values negates the result exactly. Above 30 rows the product is taken as a
    sum of logarithms with the sign tracked separately.

    Raises:
        InputRejectedError: If the lengths differ or are 0, a value is not finite, or some x_i + y_j = 0.
    """
    if len(x) != len(y) or not x:
        raise InputRejectedError(
            "x and y must have the same positive length", details={"x": len(x), "y": len(y)}
        )
    if not all(math.isfinite(v) for v in (*x, *y)):
        raise InputRejectedError("Cauchy determinant inputs must be finite")
    for i, xi in enumerate(x):
        for j, yj in enumerate(y):
            if xi + yj == 0:
                raise InputRejectedError(
                    f"x_{i} + y_{j} = 0 is a pole of the Cauchy determinant",
                    details={"i": i, "j": j, "x": xi, "y": yj},
                )
    xs, x_sign = _sorted_with_parity([float(v) for v in x])
    ys, y_sign = _sorted_with_parity([float(v) for v in y])
    factors = _pair_factors(xs, ys)
    sign = x_sign * y_sign
    if any(f == 0.0 for f in factors):
        return 0.0
    if len(xs) <= DIRECT_PRODUCT_LIMIT:
        return sign * math.prod(factors)

    for f in factors:
        if f < 0:
            sign = -sign
    return sign * math.exp(math.fsum(math.log(abs(f)) for f in factors))


def as_fraction(value: Rational) -> Fraction:
    """Convert to an exact fraction; floats convert exactly.

    Raises:
        InputRejectedError: If the value is not a finite rational.
    """
    try:
        return Fraction(value)
    except (ValueError, TypeError, OverflowError) as e:
        raise InputRejectedError(f"Not a rational number: {value!r}", details={"value": str(value)}, cause=e)


def rational_exponents(exponents: Iterable[Rational]) -> Tuple[Fraction, ...]:
    """Convert exponents to fractions and validate them for exact Gram arithmetic.

    Floats convert exactly, so 0.1 becomes 3602879701896397/36028797018963968.

    Raises:
        InputRejectedError: If a value is not rational, repeats, or is at most -1/2.
    """
    values = tuple(as_fraction(v) for v in exponents)
    if len(set(values)) != len(values):
        raise InputRejectedError("Exponents must be pairwise distinct", details={"exponents": [str(v) for v in values]})
    for index, value in enumerate(values):
        if value <= Fraction(-1, 2):
            raise InputRejectedError(
                f"Exponent λ_{index} = {value} must be greater than -1/2", details={"index": index}
            )
    return values


def _bareiss(rows: List[List[int]]) -> int:
    """Fraction-free (Bareiss) elimination; every division is exact."""
    m = [row[:] for row in rows]
    size, sign, previous = len(m), 1, 1
    for k in range(size - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, size) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // previous
        previous = m[k][k]
    return sign * m[size - 1][size - 1]


def exact_gram_determinant(exponents: Sequence[Fraction]) -> Fraction:
    """Exact determinant of the Gram matrix of already validated rational exponents."""
    if not exponents:
        return Fraction(1)
    rows, scale = [], 1
    for a in exponents:
        entries = [1 / (a + b + 1) for b in exponents]
        row_scale = math.lcm(*(e.denominator for e in entries))
        rows.append([int(e * row_scale) for e in entries])
        scale *= row_scale
    return Fraction(_bareiss(rows), scale)


def gram_determinant_bruteforce(
    exponents: Iterable[Rational], limit: int = GRAM_ORACLE_LIMIT
) -> Fraction:
    """Exact rational Gram determinant G(x^λ_1, ..., x^λ_n).

    Each row is scaled to integers by the lcm of its denominators and the
    integer matrix is reduced by fraction-free elimination.

    Args:
        exponents: Rationals (Fraction, int, exact float or "p/q" string), pairwise distinct, > -1/2.
        limit: Largest accepted number of exponents.

    Raises:
        InputRejectedError: If there are more than `limit` exponents or an exponent is invalid.
    """
    values = rational_exponents(exponents)
    if len(values) > limit:
        raise InputRejectedError(
            f"Exact Gram determinants are limited to {limit} exponents, got {len(values)}",
            details={"count": len(values), "limit": limit},
        )
    determinant = exact_gram_determinant(values)
    logger.debug(f"Exact Gram determinant of {len(values)} exponents: {determinant}")
    return determinant
