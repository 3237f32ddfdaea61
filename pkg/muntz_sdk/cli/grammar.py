"""Micro-grammars for command line values: exponent sequences, number lists and polynomial terms.

Sequences:

- `i`, `2*i`, `2*i+1`, `i-1`: affine families a·i + b
- `i^2`, `i^0.5`, `i^-1`: power families i^k
- `primes`: 0 followed by the primes
- `1,2,5/2`: an explicit list
- `@values.csv`, `@values.json`, `@values.yaml`: an explicit list read from a file
"""

import logging
import re
from fractions import Fraction
from typing import List, Optional, Tuple

from ..core.polynomial import GeneralizedPolynomial, Interval
from ..core.sequences import ExponentSequence
from ..errors.exceptions import InputRejectedError


logger = logging.getLogger(__name__)

_NUMBER = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_AFFINE = re.compile(
    rf"^(?:(?P<scale>{_NUMBER})\s*\*\s*)?i(?:\s*(?P<sign>[+-])\s*(?P<offset>{_NUMBER}))?$"
)
_POWER = re.compile(rf"^i\s*(?:\^|\*\*)\s*(?P<power>-?{_NUMBER})$")


def parse_number(text: str) -> Fraction:
    """Parse a decimal or a ratio such as `5/2`, exactly.

    Raises:
        InputRejectedError: If the text is not a finite number.
    """
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise InputRejectedError(f"Not a number: {text!r}", details={"value": text}, cause=e)
    try:
        float(value)
    except OverflowError as e:
        raise InputRejectedError(
            f"Number {text.strip()!r} is out of floating-point range", details={"value": text}, cause=e
        )
    return value


def parse_numbers(text: str) -> List[Fraction]:
    """Parse a comma-separated list; the empty string is the empty list."""
    if not text.strip():
        return []
    return [parse_number(part) for part in text.split(",")]


def check_signs(values: List[Fraction], allow_negative: bool, name: str = "lambdas") -> None:
    """Reject negative exponents unless they were explicitly allowed.

    Raises:
        InputRejectedError: Naming the first negative value.
    """
    if allow_negative:
        return
    for index, value in enumerate(values):
        if value < 0:
            raise InputRejectedError(
                f"Exponent {name}[{index}] = {value} is negative; pass --allow-negative-exponents to accept "
                "exponents in (-1/2, 0)",
                details={"index": index, "exponent": str(value)},
            )


def parse_sequence(text: str, start: Optional[int] = None) -> ExponentSequence:
    """Parse a sequence descriptor.

    Args:
        text: The descriptor.
        start: First index of a symbolic family; 0 by default, 1 for negative powers.

    Raises:
        InputRejectedError: If the descriptor does not match the grammar or describes an invalid sequence.
    """
    descriptor = text.strip()
    if descriptor.startswith("@"):
        return ExponentSequence.from_file(descriptor[1:])
    if descriptor == "primes":
        return ExponentSequence.primes()

    match = _AFFINE.match(descriptor)
    if match:
        offset = float(match["offset"]) if match["offset"] else 0.0
        if match["sign"] == "-":
            offset = -offset
        scale = float(match["scale"]) if match["scale"] else 1.0
        return ExponentSequence.affine(scale=scale, offset=offset, start=start or 0)

    match = _POWER.match(descriptor)
    if match:
        power = float(match["power"])
        default_start = 1 if power < 0 else 0
        return ExponentSequence.power_family(power, start=default_start if start is None else start)

    if re.fullmatch(r"[\d.,/\s]+", descriptor):
        return ExponentSequence.from_values(float(v) for v in parse_numbers(descriptor))

    raise InputRejectedError(
        f"Unknown sequence descriptor {text!r}; expected i, a*i+b, i^k, primes, a list or @file",
        details={"sequence": text},
    )


def parse_terms(text: str) -> List[Tuple[float, float]]:
    """Parse `c:λ` pairs separated by commas, such as `1:2,-0.5:0`.

    Raises:
        InputRejectedError: If a pair is malformed.
    """
    terms = []
    for part in text.split(","):
        if not part.strip():
            continue
        coefficient, separator, exponent = part.partition(":")
        if not separator:
            raise InputRejectedError(f"Term {part!r} must have the form c:lambda", details={"term": part})
        terms.append((float(parse_number(coefficient)), float(parse_number(exponent))))
    return terms


def parse_interval(text: str) -> Interval:
    """Parse `lo,hi`.

    Raises:
        InputRejectedError: If there are not exactly two numbers or lo > hi.
    """
    values = parse_numbers(text)
    if len(values) != 2 or values[0] > values[1]:
        raise InputRejectedError(f"Domain {text!r} must be lo,hi with lo <= hi", details={"domain": text})
    return Interval(lo=float(values[0]), hi=float(values[1]))


def parse_polynomial(text: str, domain: Interval) -> GeneralizedPolynomial:
    polynomial = GeneralizedPolynomial.from_terms(parse_terms(text), domain)
    logger.debug(f"Parsed {text!r} as {polynomial}")
    return polynomial
