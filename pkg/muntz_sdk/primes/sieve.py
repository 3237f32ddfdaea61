"""Sieve of Eratosthenes over a numpy bit array."""

import logging
from typing import Tuple

import numpy as np

from ..errors.exceptions import InputRejectedError


logger = logging.getLogger(__name__)

SIEVE_LIMIT = 10**7


def primes_up_to(n: int, limit: int = SIEVE_LIMIT) -> Tuple[int, ...]:
    """Return all primes p ≤ n in ascending order.

    Args:
        n: Upper bound, at least 0.
        limit: Largest accepted bound; the sieve allocates one byte per integer.

    Raises:
        InputRejectedError: If n is negative or exceeds `limit`.
    """
    if n < 0:
        raise InputRejectedError("Sieve bound must be non-negative", details={"n": n})
    if n > limit:
        raise InputRejectedError(f"Sieve bound {n} exceeds the limit {limit}", details={"n": n, "limit": limit})
    if n < 2:
        return ()

    is_prime = np.ones(n + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, int(n**0.5) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False

    found = tuple(int(p) for p in np.flatnonzero(is_prime))
    logger.debug(f"Sieved {len(found)} primes up to {n}")
    return found
