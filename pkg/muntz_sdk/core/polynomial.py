"""Generalized polynomials: finite sums of real-exponent monomials."""

import logging
import math
from typing import Any, Dict, Iterable, List, Tuple, Union, overload

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ..errors.exceptions import InputRejectedError
from .grid import Grid


logger = logging.getLogger(__name__)

# Exponents must exceed this so that x^λ lies in L²[0,1].
L2_EXPONENT_FLOOR = -0.5

TermLike = Union["Term", Tuple[float, float], Dict[str, Any]]


class Interval(BaseModel):
    """Closed interval [lo, hi]."""

    lo: float = 0.0
    hi: float = 1.0

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _check_order(self) -> "Interval":
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError("Interval endpoints must be finite")
        if self.lo > self.hi:
            raise ValueError(f"Interval lower end {self.lo} exceeds upper end {self.hi}")
        return self

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


class Term(BaseModel):
    """One monomial c·x^λ; serialized as {"c": ..., "lambda": ...}."""

    coefficient: float = Field(..., alias="c")
    exponent: float = Field(..., alias="lambda")

    model_config = ConfigDict(frozen=True, populate_by_name=True)


def _as_pair(term: TermLike) -> Tuple[float, float]:
    if isinstance(term, Term):
        return term.coefficient, term.exponent
    if isinstance(term, dict):
        parsed = Term.model_validate(term)
        return parsed.coefficient, parsed.exponent
    coefficient, exponent = term
    return float(coefficient), float(exponent)


def canonical_terms(terms: Iterable[TermLike]) -> Tuple[Term, ...]:
    """Sort by exponent, merge equal exponents and drop zero coefficients."""
    merged: Dict[float, float] = {}
    for term in terms:
        coefficient, exponent = _as_pair(term)
        merged[exponent] = merged.get(exponent, 0.0) + coefficient
    return tuple(
        Term(coefficient=merged[exponent], exponent=exponent) for exponent in sorted(merged) if merged[exponent] != 0.0
    )


def _is_integer(value: float) -> bool:
    return float(value).is_integer()


class GeneralizedPolynomial(BaseModel):
    """A finite sum Σ c_i x^{λ_i} with real exponents over a closed interval.

    Terms are always held in canonical form: exponents strictly increasing,
    no duplicates and no zero coefficients. Every exponent exceeds -1/2, and
    a domain reaching below 0 is only allowed when all exponents are integers.

    The value at x = 0 follows the limit convention: x^λ is 0 for λ > 0 and 1
    for λ = 0; negative exponents cannot be evaluated at 0.
    """

    terms: Tuple[Term, ...] = ()
    domain: Interval = Field(default_factory=Interval)

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="before")
    @classmethod
    def _canonicalize(cls, data: Any) -> Any:
        if isinstance(data, dict) and "terms" in data:
            data = {**data, "terms": canonical_terms(data["terms"])}
        return data

    @model_validator(mode="after")
    def _check_invariants(self) -> "GeneralizedPolynomial":
        for term in self.terms:
            if not (math.isfinite(term.coefficient) and math.isfinite(term.exponent)):
                raise ValueError(f"Non-finite term {term.coefficient}·x^{term.exponent}")
            if term.exponent <= L2_EXPONENT_FLOOR:
                raise ValueError(f"Exponent {term.exponent} must be greater than -1/2")
        if self.domain.lo < 0 and not self.is_integral:
            raise ValueError("Domains reaching below 0 require integer exponents")
        return self

    @classmethod
    def from_terms(
        cls, terms: Iterable[TermLike], domain: Union[Interval, Tuple[float, float], None] = None
    ) -> "GeneralizedPolynomial":
        """Create a polynomial from (coefficient, exponent) pairs.

        Args:
            terms: Pairs, `Term`s or {"c", "lambda"} dictionaries; order and duplicates do not matter.
            domain: Interval or (lo, hi) pair; defaults to [0, 1].

        Returns:
            The polynomial in canonical form.

        Raises:
            InputRejectedError: If an exponent is at most -1/2 or the domain does not fit the exponents.
        """
        if domain is None:
            domain = Interval()
        elif not isinstance(domain, Interval):
            domain = Interval(lo=domain[0], hi=domain[1])
        try:
            return cls(terms=tuple(terms), domain=domain)
        except ValidationError as e:
            raise InputRejectedError(f"Invalid generalized polynomial: {e}", details={"domain": str(domain)}, cause=e)

    @classmethod
    def monomial(cls, exponent: float, coefficient: float = 1.0, domain: Any = None) -> "GeneralizedPolynomial":
        return cls.from_terms([(coefficient, exponent)], domain)

    @classmethod
    def from_json_terms(cls, data: List[Dict[str, float]], domain: Any = None) -> "GeneralizedPolynomial":
        """Create a polynomial from its JSON form, an array of {"c", "lambda"} objects."""
        return cls.from_terms(data, domain)

    def to_json_terms(self) -> List[Dict[str, float]]:
        """Return the JSON form: an exponent-sorted array of {"c", "lambda"} objects."""
        return [term.model_dump(by_alias=True) for term in self.terms]

    def canonical(self) -> "GeneralizedPolynomial":
        return GeneralizedPolynomial(terms=self.terms, domain=self.domain)

    @property
    def exponents(self) -> Tuple[float, ...]:
        return tuple(term.exponent for term in self.terms)

    @property
    def coefficients(self) -> Tuple[float, ...]:
        return tuple(term.coefficient for term in self.terms)

    @property
    def is_integral(self) -> bool:
        """Whether every exponent is a non-negative integer, i.e. this is an ordinary polynomial."""
        return all(_is_integer(term.exponent) and term.exponent >= 0 for term in self.terms)

    def coefficient(self, exponent: float) -> float:
        for term in self.terms:
            if term.exponent == exponent:
                return term.coefficient
        return 0.0

    def _check_points(self, x: NDArray[np.float64]) -> None:
        outside = (x < self.domain.lo) | (x > self.domain.hi) | ~np.isfinite(x)
        if outside.any():
            bad = float(x[outside][0])
            raise InputRejectedError(
                f"Point {bad} lies outside the domain {self.domain}", details={"x": bad, "domain": str(self.domain)}
            )
        if (x == 0).any() and any(term.exponent < 0 for term in self.terms):
            raise InputRejectedError(
                "Negative exponents cannot be evaluated at x = 0", details={"exponents": list(self.exponents)}
            )

    def eval(self, x: float) -> float:
        """Evaluate at one point, summing terms in increasing-exponent order.

        Raises:
            InputRejectedError: If x is outside the domain, or x = 0 with a negative exponent.
        """
        self._check_points(np.asarray([x], dtype=float))
        total = 0.0
        for term in self.terms:
            total += term.coefficient * _power(float(x), term.exponent)
        return total

    @overload
    def __call__(self, x: float) -> float: ...

    @overload
    def __call__(self, x: NDArray[np.float64]) -> NDArray[np.float64]: ...

    def __call__(self, x: Union[float, ArrayLike]) -> Union[float, NDArray[np.float64]]:
        """Vectorized evaluation; scalars go through `eval`."""
        if np.ndim(x) == 0:
            return self.eval(float(x))  # type: ignore[arg-type]
        points = np.asarray(x, dtype=float)
        self._check_points(points.ravel())
        total = np.zeros_like(points)
        for term in self.terms:
            total += term.coefficient * np.power(points, term.exponent)
        return total

    def _combine(self, other: "GeneralizedPolynomial", sign: float) -> "GeneralizedPolynomial":
        if other.domain != self.domain:
            raise InputRejectedError(
                "Polynomials must share their domain", details={"left": str(self.domain), "right": str(other.domain)}
            )
        pairs = [(t.coefficient, t.exponent) for t in self.terms]
        pairs += [(sign * t.coefficient, t.exponent) for t in other.terms]
        return GeneralizedPolynomial.from_terms(pairs, self.domain)

    def __add__(self, other: "GeneralizedPolynomial") -> "GeneralizedPolynomial":
        return self._combine(other, 1.0)

    def __sub__(self, other: "GeneralizedPolynomial") -> "GeneralizedPolynomial":
        return self._combine(other, -1.0)

    def __neg__(self) -> "GeneralizedPolynomial":
        return self.scale(-1.0)

    def scale(self, factor: float) -> "GeneralizedPolynomial":
        return GeneralizedPolynomial.from_terms(
            [(factor * t.coefficient, t.exponent) for t in self.terms], self.domain
        )

    def __mul__(self, other: Union[float, int, "GeneralizedPolynomial"]) -> "GeneralizedPolynomial":
        if not isinstance(other, GeneralizedPolynomial):
            return self.scale(float(other))
        if other.domain != self.domain:
            raise InputRejectedError("Polynomials must share their domain")
        pairs = [
            (a.coefficient * b.coefficient, a.exponent + b.exponent) for a in self.terms for b in other.terms
        ]
        return GeneralizedPolynomial.from_terms(pairs, self.domain)

    def __rmul__(self, other: Union[float, int]) -> "GeneralizedPolynomial":
        return self.scale(float(other))

    def l2_inner(self, other: "GeneralizedPolynomial") -> float:
        """L²[0,1] inner product from the monomial identity ⟨x^a, x^b⟩ = 1/(a+b+1)."""
        return math.fsum(
            a.coefficient * b.coefficient / (a.exponent + b.exponent + 1.0) for a in self.terms for b in other.terms
        )

    def l2_norm(self) -> float:
        return math.sqrt(max(self.l2_inner(self), 0.0))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{t.coefficient:g}·x^{t.exponent:g}" for t in self.terms)


def _power(x: float, exponent: float) -> float:
    if x == 0.0:
        return 1.0 if exponent == 0 else 0.0
    return float(x**exponent)


def sup_norm_estimate(p: GeneralizedPolynomial, grid: Grid) -> float:
    """Largest |p(x)| over the grid points.

    The result is a lower bound of the true sup norm over the domain; it is
    exact only when the maximum is attained at a grid point.

    Raises:
        InputRejectedError: If the grid is empty or leaves the polynomial's domain.
    """
    if grid.count == 0:
        raise InputRejectedError("Grid must contain at least one point")
    if grid.lo < p.domain.lo or grid.hi > p.domain.hi:
        raise InputRejectedError(
            f"Grid [{grid.lo}, {grid.hi}] is not inside the domain {p.domain}",
            details={"grid": [grid.lo, grid.hi], "domain": str(p.domain)},
        )
    values = p(grid.array)
    estimate = float(np.max(np.abs(values)))
    logger.debug(f"Sup-norm estimate {estimate:.6g} over {grid.count} grid points")
    return estimate


