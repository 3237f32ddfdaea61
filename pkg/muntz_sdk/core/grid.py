import math
from typing import Iterable, Tuple

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, ValidationError, model_validator

from ..errors.exceptions import InputRejectedError


class Grid(BaseModel):
    """Strictly increasing evaluation points; the first and last points are the endpoints.

    Grids only feed sup-norm estimates, which are lower bounds of the true sup norm.
    """

    points: Tuple[float, ...]

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _check_points(self) -> "Grid":
        if not self.points:
            raise ValueError("A grid needs at least one point")
        if not all(math.isfinite(x) for x in self.points):
            raise ValueError("Grid points must be finite")
        if any(b <= a for a, b in zip(self.points, self.points[1:])):
            raise ValueError("Grid points must be strictly increasing")
        return self

    @classmethod
    def uniform(cls, lo: float, hi: float, count: int) -> "Grid":
        """Create `count` equally spaced points from lo to hi, both included.

        Raises:
            InputRejectedError: If count < 1, or count = 1 with lo != hi, or lo > hi.
        """
        if count < 1:
            raise InputRejectedError("Grid count must be positive", details={"count": count})
        if lo > hi or (count == 1 and lo != hi) or (count > 1 and lo == hi):
            raise InputRejectedError(
                f"Cannot place {count} distinct points with endpoints {lo} and {hi}",
                details={"lo": lo, "hi": hi, "count": count},
            )
        points = np.linspace(lo, hi, count)
        # linspace can miss hi by an ulp
        points[-1] = hi
        try:
            return cls(points=tuple(float(x) for x in points))
        except ValidationError as e:
            raise InputRejectedError(
                f"Cannot place {count} distinct points with endpoints {lo} and {hi}: {e}",
                details={"lo": lo, "hi": hi, "count": count},
                cause=e,
            )

    @classmethod
    def of(cls, points: Iterable[float]) -> "Grid":
        """Create a grid from explicit points.

        Raises:
            InputRejectedError: If the points are empty, not finite, or not strictly increasing.
        """
        try:
            return cls(points=tuple(float(x) for x in points))
        except ValidationError as e:
            raise InputRejectedError(f"Invalid grid: {e}", cause=e)

    @property
    def count(self) -> int:
        return len(self.points)

    @property
    def lo(self) -> float:
        return self.points[0]

    @property
    def hi(self) -> float:
        return self.points[-1]

    @property
    def array(self) -> NDArray[np.float64]:
        return np.asarray(self.points, dtype=float)
