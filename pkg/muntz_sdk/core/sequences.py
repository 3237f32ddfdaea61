"""Exponent sequences {λ_i} of Müntz systems."""

import csv
import io
import json
import logging
import math
from enum import Enum
from pathlib import Path
from typing import Any, Iterable, List, Optional, Tuple, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ..errors.exceptions import InputRejectedError


logger = logging.getLogger(__name__)


class SequenceKind(str, Enum):
    """Families of exponent sequences."""

    EXPLICIT = "explicit"
    AFFINE = "affine"
    POWER = "power"
    PRIMES = "primes"
    CUSTOM = "custom"


class ExponentSequence(BaseModel):
    """Descriptor of an exponent sequence λ_0, λ_1, ...

    Symbolic families are indexed from `start`:

    - affine: λ = scale·i + offset
    - power: λ = i^power
    - primes: the primes in increasing order
    - explicit: a finite list
    - custom: an explicit head followed by a symbolic `tail` family

    With `leading_zero` the sequence starts with λ_0 = 0 before the family values.
    Values are pairwise distinct and positive, except a leading 0.
    """

    kind: SequenceKind
    scale: float = 1.0
    offset: float = 0.0
    power: float = 1.0
    start: int = Field(0, ge=0)
    leading_zero: bool = False
    explicit: Tuple[float, ...] = ()
    tail: Optional["ExponentSequence"] = None
    label: Optional[str] = None

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _check_family(self) -> "ExponentSequence":
        if self.kind == SequenceKind.AFFINE:
            if self.scale <= 0:
                raise ValueError("Affine sequences need a positive slope")
            if self.scale * self.start + self.offset < 0:
                raise ValueError("Affine sequences must start at a non-negative value")
        elif self.kind == SequenceKind.POWER:
            if self.power == 0:
                raise ValueError("Power sequences need a non-zero exponent")
            if self.power < 0 and self.start < 1:
                raise ValueError("Power sequences with a negative exponent must start at i >= 1")
        elif self.kind in (SequenceKind.EXPLICIT, SequenceKind.CUSTOM):
            _check_explicit(self.explicit)
            if self.kind == SequenceKind.CUSTOM and (self.tail is None or not self.tail.is_symbolic):
                raise ValueError("Custom sequences need a symbolic tail")
            if self.kind == SequenceKind.EXPLICIT and self.tail is not None:
                raise ValueError("Explicit sequences have no tail; use kind 'custom'")
        if self.leading_zero and self._family_starts_at_zero():
            raise ValueError("The family already starts at 0")
        return self

    @classmethod
    def affine(
        cls, scale: float = 1.0, offset: float = 0.0, start: int = 0, leading_zero: bool = False
    ) -> "ExponentSequence":
        return cls._build(
            kind=SequenceKind.AFFINE,
            scale=scale,
            offset=offset,
            start=start,
            leading_zero=leading_zero,
            label=_affine_label(scale, offset),
        )

    @classmethod
    def power_family(cls, power: float, start: int = 0, leading_zero: bool = False) -> "ExponentSequence":
        return cls._build(
            kind=SequenceKind.POWER, power=power, start=start, leading_zero=leading_zero, label=f"i^{power:g}"
        )

    @classmethod
    def primes(cls, leading_zero: bool = True) -> "ExponentSequence":
        return cls._build(kind=SequenceKind.PRIMES, leading_zero=leading_zero, label="primes")

    @classmethod
    def from_values(cls, values: Iterable[float], tail: Optional["ExponentSequence"] = None) -> "ExponentSequence":
        """Create an explicit sequence, or a custom one when a symbolic tail decides its density."""
        kind = SequenceKind.EXPLICIT if tail is None else SequenceKind.CUSTOM
        return cls._build(kind=kind, explicit=tuple(float(v) for v in values), tail=tail)

    @classmethod
    def _build(cls, **fields: Any) -> "ExponentSequence":
        try:
            return cls(**fields)
        except ValidationError as e:
            raise InputRejectedError(f"Invalid exponent sequence: {e}", details=_plain(fields), cause=e)

    @classmethod
    def from_file(cls, file_path: Union[str, Path]) -> "ExponentSequence":
        """Create an explicit sequence from a file.

        CSV files hold one exponent per row (a header row is skipped), JSON and
        YAML files hold a list of numbers or an object with a `lambdas` list.

        Raises:
            InputRejectedError: If the file cannot be read, cannot be parsed, or holds invalid exponents.
        """
        path = Path(file_path)
        try:
            content = path.resolve().read_text(encoding="utf-8")
        except OSError as e:
            raise InputRejectedError(f"Failed to read file: {e}", details={"file_path": str(path)}, cause=e)

        suffix = path.suffix.lower()
        try:
            if suffix == ".csv":
                values = _csv_values(content)
            elif suffix in (".json", ".yaml", ".yml"):
                data = json.loads(content) if suffix == ".json" else yaml.safe_load(content)
                if isinstance(data, dict):
                    data = data.get("lambdas")
                if not isinstance(data, list):
                    raise InputRejectedError("Expected a list of exponents", details={"file_path": str(path)})
                values = [float(v) for v in data]
            else:
                raise InputRejectedError(
                    f"Unsupported file extension: {path.suffix}. Only .csv, .json, .yaml and .yml files are supported.",
                    details={"file_path": str(path)},
                )
        except (ValueError, TypeError, yaml.YAMLError) as e:
            if isinstance(e, InputRejectedError):
                raise
            raise InputRejectedError(f"Invalid exponent file: {e}", details={"file_path": str(path)}, cause=e)

        logger.info(f"Loaded {len(values)} exponents from {path}")
        return cls.from_values(values)

    @property
    def is_symbolic(self) -> bool:
        return self.kind in (SequenceKind.AFFINE, SequenceKind.POWER, SequenceKind.PRIMES)

    def describe(self) -> str:
        if self.label:
            return self.label
        if self.kind == SequenceKind.CUSTOM and self.tail is not None:
            return f"explicit[{len(self.explicit)}] then {self.tail.describe()}"
        return f"explicit[{len(self.explicit)}]"

    def _family_starts_at_zero(self) -> bool:
        if self.kind == SequenceKind.AFFINE:
            return self.scale * self.start + self.offset == 0
        if self.kind == SequenceKind.POWER:
            return self.power > 0 and self.start == 0
        return False

    def _family(self, count: int) -> List[float]:
        indices = range(self.start, self.start + count)
        if self.kind == SequenceKind.AFFINE:
            return [self.scale * i + self.offset for i in indices]
        if self.kind == SequenceKind.POWER:
            return [0.0 if i == 0 else float(i) ** self.power for i in indices]
        if self.kind == SequenceKind.PRIMES:
            return [float(p) for p in _first_primes(count)]
        raise InputRejectedError(f"Sequence kind {self.kind.value} has no symbolic family")

    def values(self, n: int) -> Tuple[float, ...]:
        """Return λ_0, ..., λ_n.

        Raises:
            InputRejectedError: If n < 0, or an explicit list has fewer than n+1 values.
        """
        if n < 0:
            raise InputRejectedError("Index n must be non-negative", details={"n": n})
        count = n + 1
        if self.kind == SequenceKind.EXPLICIT:
            if count > len(self.explicit):
                raise InputRejectedError(
                    f"Explicit sequence has {len(self.explicit)} values, {count} requested",
                    details={"available": len(self.explicit), "requested": count},
                )
            return self.explicit[:count]
        if self.kind == SequenceKind.CUSTOM:
            return self._custom_values(count)
        head = [0.0] if self.leading_zero else []
        return tuple(head + self._family(count - len(head)))

    def positive_values(self, n: int) -> Tuple[float, ...]:
        """Return the first n strictly positive values (a leading 0 is skipped)."""
        values = self.values(n)
        positive = [v for v in values if v > 0]
        if len(positive) < n:
            positive = [v for v in self.values(n + 1) if v > 0]
        return tuple(positive[:n])

    def _custom_values(self, count: int) -> Tuple[float, ...]:
        assert self.tail is not None
        head = list(self.explicit[:count])
        if len(head) == count:
            return tuple(head)
        seen = set(head)
        # the tail can collide with at most len(head) values
        extra = [v for v in self.tail.values(count + len(head)) if v > 0 and v not in seen]
        return tuple(head + extra[: count - len(head)])


def _check_explicit(values: Tuple[float, ...]) -> None:
    if not all(math.isfinite(v) for v in values):
        raise ValueError("Exponents must be finite")
    if len(set(values)) != len(values):
        raise ValueError("Exponents must be pairwise distinct")
    for index, value in enumerate(values):
        if value < 0 or (value == 0 and index > 0):
            raise ValueError(f"Exponent λ_{index} = {value} must be positive (only λ_0 may be 0)")


def _csv_values(content: str) -> List[float]:
    values = []
    for row in csv.reader(io.StringIO(content)):
        if not row or not row[0].strip():
            continue
        try:
            values.append(float(row[0]))
        except ValueError:
            if values:
                raise
    return values


def _first_primes(count: int) -> List[int]:
    from ..primes.sieve import primes_up_to

    if count <= 0:
        return []
    bound = 15 if count < 6 else int(count * (math.log(count) + math.log(math.log(count)))) + 1
    return list(primes_up_to(bound)[:count])


def _affine_label(scale: float, offset: float) -> str:
    slope = "i" if scale == 1 else f"{scale:g}*i"
    if offset == 0:
        return slope
    return f"{slope}+{offset:g}" if offset > 0 else f"{slope}-{-offset:g}"


def _plain(fields: dict) -> dict:
    return {key: (value.describe() if isinstance(value, ExponentSequence) else value) for key, value in fields.items()}


ExponentSequence.model_rebuild()
