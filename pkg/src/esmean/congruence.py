"""Root counting for the congruences 4*l*x**2 + 1 = 0 and 4*a**2*l + 1 = 0 (mod n).

Counts only — no roots are ever materialized.  The quadratic count is
multiplicative with prime-power counts equal to the prime counts (two
simple roots lift uniquely; zero roots stay zero), which reduces
everything to a quadratic-character evaluation per prime.
"""

from __future__ import annotations

import math
from typing import Optional

from . import arith
from .errors import CapacityError, DomainError

import numpy as np

_ORACLE_LIMIT = 1_000_000


def quad_root_count_prime(l: int, p: int) -> int:
    """Count x in [0, p) with 4*l*x**2 + 1 = 0 (mod p); always 0, 1, or 2.

    p = 2 gives 0 (the polynomial value is odd), p | l gives 0 (the value
    is 1 mod p); otherwise the count is 1 + chi(-(4l)^{-1}) with chi the
    quadratic character mod p, evaluated by Euler's criterion.
    """
    if l < 1:
        raise DomainError(f"l must be positive, got {l}")
    if p < 2 or not arith.is_prime(p):
        raise DomainError(f"p = {p} is not prime")
    if p == 2 or l % p == 0:
        return 0
    # x**2 = -(4l)^{-1} (mod p); count via Euler's criterion on the RHS
    rhs = (-pow(4 * l, -1, p)) % p
    if rhs == 0:  # cannot happen for p odd, p not dividing l
        return 1
    return 2 if pow(rhs, (p - 1) // 2, p) == 1 else 0


def quad_root_count(l: int, n: int) -> int:
    """Count x in [0, n) with 4*l*x**2 + 1 = 0 (mod n), multiplicatively.

    The count for n is the product over primes p | n of the count for p:
    exponents never matter because each simple root mod p lifts uniquely
    to every prime power.  n = 1 returns 1 (the empty modulus).
    """
    if l < 1:
        raise DomainError(f"l must be positive, got {l}")
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if n == 1:
        return 1
    out = 1
    for p, _ in arith.factorize(n).factors:
        c = quad_root_count_prime(l, p)
        if c == 0:
            return 0
        out *= c
    return out


def quad_root_count_oracle(l: int, n: int) -> int:
    """Ground truth by direct evaluation of all residues (n <= 10**6)."""
    if l < 1 or n < 1:
        raise DomainError("l and n must be positive")
    if n > _ORACLE_LIMIT:
        raise CapacityError(f"oracle limited to n <= {_ORACLE_LIMIT}")
    if n == 1:
        return 1
    x = np.arange(n, dtype=np.int64)
    # 4l (mod n) and x**2 (mod n) keep every product below 2**62
    val = (np.int64(4 * l % n) * ((x * x) % n) + 1) % n
    return int(np.count_nonzero(val == 0))


def linear_root_count(a: int, n: int) -> int:
    """Count l in [0, n) with 4*a**2*l + 1 = 0 (mod n): 1 or 0 by a gcd test."""
    if a < 1 or n < 1:
        raise DomainError("a and n must be positive")
    return 1 if math.gcd(4 * a * a, n) == 1 else 0


def linear_root_count_oracle(a: int, n: int) -> int:
    """Direct loop counterpart of :func:`linear_root_count` (small n)."""
    if a < 1 or n < 1:
        raise DomainError("a and n must be positive")
    if n > _ORACLE_LIMIT:
        raise CapacityError(f"oracle limited to n <= {_ORACLE_LIMIT}")
    c = 4 * a * a % n
    return sum(1 for l in range(n) if (c * l + 1) % n == 0)
