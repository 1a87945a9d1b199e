"""Enumeration and type classification of unit-fraction splittings of 4/n.

Two independent engines live here on purpose.  ``enumerate_solutions``
walks the (n1, n2) search tree with exact integer arithmetic and yields
every nondecreasing triple.  ``type_split`` never enumerates: for an odd
prime it counts solutions through the divisor structure of (p*n1)**2,
which is what makes the mean-value sweeps tractable.  Tests play the two
against each other.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from . import _kernels, arith
from .errors import DomainError


class SolutionType(enum.Enum):
    """How many denominators of a solution the prime divides."""

    TYPE_I = 1
    TYPE_II = 2
    OTHER = 0


@dataclass(frozen=True)
class SolutionTriple:
    """One solution 4/n = 1/n1 + 1/n2 + 1/n3 in nondecreasing order.

    Attributes:
        n1: Smallest denominator.
        n2: Middle denominator.
        n3: Largest denominator.
    """

    n1: int
    n2: int
    n3: int

    def permutation_weight(self) -> int:
        """Number of distinct orderings: 1, 3, or 6."""
        if self.n1 == self.n2 and self.n2 == self.n3:
            return 1
        if self.n1 == self.n2 or self.n2 == self.n3:
            return 3
        return 6

    def solves(self, n: int) -> bool:
        """Exact rational check of the defining equation for 4/n."""
        return (
            Fraction(1, self.n1) + Fraction(1, self.n2) + Fraction(1, self.n3)
            == Fraction(4, n)
        )


@dataclass(frozen=True)
class SolutionSet:
    """All solutions for one n.

    Attributes:
        n: The denominator of 4/n.
        canonical: Nondecreasing triples, lexicographically sorted.
        ordered_count: Solutions counted with order, i.e. the sum of
            permutation weights over ``canonical``.
    """

    n: int
    canonical: Tuple[SolutionTriple, ...]
    ordered_count: int


@dataclass(frozen=True)
class TypeSplit:
    """Ordered solution counts for a prime, split by divisibility type.

    Attributes:
        p: The prime.
        f1: Ordered solutions with exactly one denominator divisible by p.
        f2: Ordered solutions with exactly two denominators divisible by p.
        other: Ordered solutions with zero or three divisible denominators
            (provably 0 for every odd prime; kept explicit so the identity
            f = f1 + f2 + other is checkable, not assumed).
    """

    p: int
    f1: int
    f2: int
    other: int

    @property
    def total(self) -> int:
        return self.f1 + self.f2 + self.other


def enumerate_solutions(n: int) -> SolutionSet:
    """Find every canonical solution of 4/n = 1/n1 + 1/n2 + 1/n3.

    The search is the standard bounded two-level walk: n/4 < n1 <= 3n/4
    (from 1/n1 < 4/n <= 3/n1), then for the exact remainder r written as
    num/den the middle denominator satisfies den/num < n2 <= 2*den/num,
    and n3 is accepted when it comes out a positive integer >= n2.  All
    arithmetic is exact.

    Args:
        n: Positive integer.

    Returns:
        The complete SolutionSet; empty for n = 1 (4 > 3 is unreachable).

    Raises:
        DomainError: If n < 1.
    """
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    found = []
    for n1 in range(n // 4 + 1, (3 * n) // 4 + 1):
        num = 4 * n1 - n          # remainder 4/n - 1/n1 = num / den > 0
        den = n * n1
        n2_lo = max(n1, den // num + 1)
        n2_hi = (2 * den) // num
        for n2 in range(n2_lo, n2_hi + 1):
            rnum = num * n2 - den
            rden = den * n2
            if rnum > 0 and rden % rnum == 0:
                n3 = rden // rnum
                if n3 >= n2:
                    found.append(SolutionTriple(n1, n2, n3))
    found.sort(key=lambda t: (t.n1, t.n2, t.n3))
    ordered = sum(t.permutation_weight() for t in found)
    return SolutionSet(n=n, canonical=tuple(found), ordered_count=ordered)


def classify(p: int, s: SolutionTriple) -> SolutionType:
    """Classify a solution of 4/p by how many denominators p divides.

    Args:
        p: A prime.
        s: A triple that must solve 4/p exactly.

    Returns:
        TYPE_I for exactly one divisible denominator, TYPE_II for exactly
        two, OTHER otherwise.

    Raises:
        DomainError: If p is not prime or s does not solve the equation.
    """
    if not arith.is_prime(p):
        raise DomainError(f"p = {p} is not prime")
    if not s.solves(p):
        raise DomainError(f"{(s.n1, s.n2, s.n3)} does not solve 4/{p}")
    k = sum(1 for t in (s.n1, s.n2, s.n3) if t % p == 0)
    if k == 1:
        return SolutionType.TYPE_I
    if k == 2:
        return SolutionType.TYPE_II
    return SolutionType.OTHER


def _split_via_enumeration(p: int) -> TypeSplit:
    sols = enumerate_solutions(p)
    f1 = f2 = other = 0
    for t in sols.canonical:
        w = t.permutation_weight()
        kind = classify(p, t)
        if kind is SolutionType.TYPE_I:
            f1 += w
        elif kind is SolutionType.TYPE_II:
            f2 += w
        else:
            other += w
    return TypeSplit(p=p, f1=f1, f2=f2, other=other)


def type_split(p: int, tables: Optional[arith.ArithTables] = None) -> TypeSplit:
    """Compute (f1, f2) for a prime via the divisor-structure count.

    For odd p every solution has n1 < p, and solutions correspond to the
    divisors u = p**j * v (v | n1**2, 0 <= j <= 2) of (p*n1)**2 with
    u <= p*n1 and 4*n1 - p dividing u + p*n1.  Then j >= 1 iff p | n2 and
    j <= 1 iff p | n3, so j = 1 gives Type II and j in {0, 2} Type I —
    in particular ``other`` is structurally 0.  p = 2 falls back to plain
    enumeration plus classification.

    Args:
        p: A prime.
        tables: Sieve tables covering 3p/4 (built on demand otherwise).

    Returns:
        The TypeSplit with ordered counts.

    Raises:
        DomainError: If p is not prime.
    """
    if not arith.is_prime(p):
        raise DomainError(f"p = {p} is not prime")
    if p == 2:
        return _split_via_enumeration(p)
    t = _tables_for(p, tables)
    f1 = np.zeros(1, np.int64)
    f2 = np.zeros(1, np.int64)
    _kernels.typesplit_batch(np.array([p], np.int64), t.least_prime_factor,
                             f1, f2)
    return TypeSplit(p=p, f1=int(f1[0]), f2=int(f2[0]), other=0)


def _tables_for(pmax: int, tables: Optional[arith.ArithTables]) -> arith.ArithTables:
    need = (3 * pmax) // 4 + 1
    if tables is not None and tables.limit >= need:
        return tables
    t = arith.default_tables()
    if t.limit >= need:
        return t
    return arith.sieve_tables(need, with_phi=False)


_SPLIT_CHUNK = 256


def type_split_many(ps: Sequence[int],
                    tables: Optional[arith.ArithTables] = None,
                    workers: int = 1) -> Tuple[np.ndarray, np.ndarray]:
    """Batch (f1, f2) for many odd primes; deterministic for any workers.

    Work is cut into fixed 256-prime chunks regardless of ``workers`` and
    results land in preallocated per-prime slots, so the output arrays
    are identical whatever the parallel schedule.

    Args:
        ps: Odd primes, any order.
        tables: Sieve tables covering 3*max(ps)/4.
        workers: Thread count (the kernel releases the GIL).

    Returns:
        Two int64 arrays (f1, f2) aligned with ``ps``.
    """
    ps_arr = np.asarray(ps, np.int64)
    if len(ps_arr) == 0:
        return np.zeros(0, np.int64), np.zeros(0, np.int64)
    if int(ps_arr.min()) < 3:
        raise DomainError("type_split_many handles odd primes only")
    t = _tables_for(int(ps_arr.max()), tables)
    composite = np.zeros(len(ps_arr), bool)
    for q in arith.primes_up_to(math.isqrt(int(ps_arr.max()))):
        composite |= (ps_arr % q == 0) & (ps_arr != q)
    if composite.any():
        bad = int(ps_arr[np.nonzero(composite)[0][0]])
        raise DomainError(f"p = {bad} is not prime")
    f1 = np.zeros(len(ps_arr), np.int64)
    f2 = np.zeros(len(ps_arr), np.int64)

    spans = [(i, min(i + _SPLIT_CHUNK, len(ps_arr)))
             for i in range(0, len(ps_arr), _SPLIT_CHUNK)]

    def run(span: Tuple[int, int]) -> None:
        lo, hi = span
        _kernels.typesplit_batch(ps_arr[lo:hi], t.least_prime_factor,
                                 f1[lo:hi], f2[lo:hi])

    if workers <= 1:
        for span in spans:
            run(span)
    else:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            list(ex.map(run, spans))
    return f1, f2
