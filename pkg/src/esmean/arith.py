"""Sieved and per-integer arithmetic functions.

This module owns the shared number-theory plumbing: a linear
least-prime-factor sieve with divisor-count and totient tables, exact
factorization with a deterministic large-cofactor path, smooth-number
counting, and the squared-divisor partial sums consumed by the envelope
diagnostics.

Conventions
-----------
* ``least_prime_factor`` / ``greatest_prime_factor`` reject ``n = 1``:
  the empty factorization has no least or greatest element, and callers
  that need "no rough part" semantics use the explicit split type in
  :mod:`esmean.bilinear` instead of a sentinel prime.
* Primality for 64-bit inputs is decided by trial division below
  ``2**20`` and a combined strong base-2 + strong Lucas test above it;
  the combination is exhaustively verified below ``2**64`` and merely
  counterexample-free beyond, which is documented rather than hidden.
"""

from __future__ import annotations

import math
import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from . import _kernels
from .errors import CapacityError, DomainError

#: sieve tables above this limit are refused (about 1.1 GiB with phi)
MAX_SIEVE_LIMIT = 1 << 26

_TABLE_MAGIC = "esmean-arith-tables"
_TABLE_VERSION = 1


@dataclass(frozen=True)
class Factorization:
    """Prime-power decomposition ``n = prod(p**e for p, e in factors)``.

    Attributes
    ----------
    n : int
        The factored integer, ``n >= 1``.
    factors : tuple of (int, int)
        ``(prime, exponent)`` pairs with primes strictly increasing and
        exponents ``>= 1``; empty exactly when ``n == 1``.
    """

    n: int
    factors: Tuple[Tuple[int, int], ...]

    def __post_init__(self) -> None:
        prod = 1
        last = 1
        for p, e in self.factors:
            if e < 1:
                raise DomainError(f"exponent {e} < 1 in factorization of {self.n}")
            if p <= last:
                raise DomainError("factor primes must be strictly increasing")
            last = p
            prod *= p ** e
        if prod != self.n:
            raise DomainError(
                f"factorization product {prod} does not equal n = {self.n}"
            )


@dataclass(frozen=True)
class ArithTables:
    """Immutable sieve tables for ``2 <= n <= limit``.

    Attributes
    ----------
    limit : int
        Inclusive upper bound of every table.
    least_prime_factor : numpy.ndarray
        ``uint32``; entry ``n`` is the smallest prime dividing ``n``.
    divisor_count : numpy.ndarray
        ``int32``; entry ``n`` is ``d(n)``.
    phi : numpy.ndarray or None
        ``int64`` totient table, or ``None`` when built without one.
    primes : numpy.ndarray
        ``int64`` ascending primes ``<= limit``.
    """

    limit: int
    least_prime_factor: np.ndarray
    divisor_count: np.ndarray
    phi: Optional[np.ndarray]
    primes: np.ndarray

    def save(self, path: str) -> None:
        """Persist the tables as an .npz with a magic header and the limit.

        The write is atomic (temp file + rename) so a crashed run can
        never leave a torn cache behind.
        """
        payload = {
            "magic": np.array([_TABLE_MAGIC]),
            "version": np.array([_TABLE_VERSION], np.int64),
            "limit": np.array([self.limit], np.int64),
            "lpf": self.least_prime_factor,
            "dcnt": self.divisor_count,
            "primes": self.primes,
        }
        if self.phi is not None:
            payload["phi"] = self.phi
        directory = os.path.dirname(os.path.abspath(path)) or "."
        fd, tmp = tempfile.mkstemp(dir=directory, suffix=".npz.tmp")
        try:
            with os.fdopen(fd, "wb") as fh:
                np.savez(fh, **payload)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    @staticmethod
    def load(path: str, expected_limit: Optional[int] = None) -> "ArithTables":
        """Load tables written by :meth:`save`.

        Raises
        ------
        ConfigurationError
            If the magic/version header does not match, or
            ``expected_limit`` is given and disagrees (stale cache).
        """
        from .errors import ConfigurationError

        with np.load(path, allow_pickle=False) as z:
            if "magic" not in z or str(z["magic"][0]) != _TABLE_MAGIC:
                raise ConfigurationError(f"{path}: not an arith-tables file")
            if int(z["version"][0]) != _TABLE_VERSION:
                raise ConfigurationError(f"{path}: table version mismatch")
            limit = int(z["limit"][0])
            if expected_limit is not None and limit != expected_limit:
                raise ConfigurationError(
                    f"{path}: cached limit {limit} != requested {expected_limit}"
                )
            phi = z["phi"] if "phi" in z else None
            return ArithTables(
                limit=limit,
                least_prime_factor=z["lpf"],
                divisor_count=z["dcnt"],
                phi=phi,
                primes=z["primes"],
            )


def sieve_tables(limit: int, *, with_phi: bool = True,
                 max_limit: int = MAX_SIEVE_LIMIT) -> ArithTables:
    """Build :class:`ArithTables` up to ``limit`` with a linear sieve.

    Parameters
    ----------
    limit : int
        Inclusive table bound, ``limit >= 2``.
    with_phi : bool, optional
        Also build the totient table (costs 8 bytes per entry).
    max_limit : int, optional
        Memory budget expressed as the largest accepted ``limit``.

    Returns
    -------
    ArithTables

    Raises
    ------
    DomainError
        If ``limit < 2``.
    CapacityError
        If ``limit > max_limit``.
    """
    if limit < 2:
        raise DomainError(f"sieve limit must be >= 2, got {limit}")
    if limit > max_limit:
        raise CapacityError(
            f"sieve limit {limit} exceeds the configured budget {max_limit}"
        )
    lpf, dcnt, phi, primes = _kernels.lpf_linear_sieve(limit, with_phi)
    return ArithTables(
        limit=limit,
        least_prime_factor=lpf,
        divisor_count=dcnt,
        phi=phi if with_phi else None,
        primes=primes,
    )


_default_tables: Optional[ArithTables] = None
_DEFAULT_LIMIT = 100_000


def default_tables() -> ArithTables:
    """Shared small tables (limit 10**5) built once per process."""
    global _default_tables
    if _default_tables is None:
        _default_tables = sieve_tables(_DEFAULT_LIMIT)
    return _default_tables


# --------------------------------------------------------------------------
# primality
# --------------------------------------------------------------------------

def _base2_strong(n: int) -> bool:
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    x = pow(2, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
        if x == 1:
            return False
    return False


def _jacobi(a: int, m: int) -> int:
    a %= m
    r = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if m % 8 in (3, 5):
                r = -r
        a, m = m, a
        if a % 4 == 3 and m % 4 == 3:
            r = -r
        a %= m
    return r if m == 1 else 0


def _lucas_strong(n: int) -> bool:
    # parameter walk D = 5, -7, 9, -11, ... with jacobi(D, n) = -1
    d = 5
    while True:
        j = _jacobi(d, n)
        if j == -1:
            break
        if j == 0 and abs(d) != n:
            return False
        d = -(d + 2) if d > 0 else -(d - 2)
    q = (1 - d) // 4
    dd = n + 1
    s = (dd & -dd).bit_length() - 1
    dd >>= s
    u, v, qk = 1, 1, q % n
    for bit in bin(dd)[3:]:
        u, v, qk = u * v % n, (v * v - 2 * qk) % n, qk * qk % n
        if bit == "1":
            u, v = (u + v) * (n + 1) // 2 % n, (d * u + v) * (n + 1) // 2 % n
            qk = qk * q % n
    if u == 0 or v == 0:
        return True
    for _ in range(s - 1):
        v = (v * v - 2 * qk) % n
        qk = qk * qk % n
        if v == 0:
            return True
    return False


def is_prime(n: int) -> bool:
    """Deterministic primality for ``n < 2**64``; best-known test beyond.

    Small inputs go through trial division; larger ones through a strong
    base-2 test plus a strong Lucas test, a combination with no known
    counterexample and exhaustively verified below ``2**64``.
    """
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    if n < 41 * 41:
        return True
    if n < 1 << 20:
        t = default_tables()
        if n <= t.limit:
            return int(t.least_prime_factor[n]) == n
        i = 41
        while i * i <= n:
            if n % i == 0:
                return False
            i += 2
        return True
    r = math.isqrt(n)
    if r * r == n:
        return False
    return _base2_strong(n) and _lucas_strong(n)


def _pollard_brent(n: int) -> int:
    """A nontrivial factor of composite, non-prime-power-free n (n odd, > 1).

    Brent's cycle variant with a deterministic parameter schedule, so
    repeated runs factor identically.
    """
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r <<= 1
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
        c += 1  # rare cycle degeneracy: restart with the next polynomial


def factorize(n: int, tables: Optional[ArithTables] = None) -> Factorization:
    """Canonical prime-power decomposition of ``n >= 1``.

    Parameters
    ----------
    n : int
        Integer to factor; ``n = 1`` yields the empty factorization.
    tables : ArithTables, optional
        Sieve tables to use for the fast path; defaults to the shared
        ``limit = 10**5`` tables.

    Returns
    -------
    Factorization

    Raises
    ------
    DomainError
        If ``n < 1``.

    Notes
    -----
    Inside the table range this is a least-prime-factor walk.  Beyond it,
    trial division by all sieved primes runs first; a remaining cofactor
    is split recursively with a deterministic Brent-cycle method, with
    primality certified at every leaf.
    """
    if n < 1:
        raise DomainError(f"factorize requires n >= 1, got {n}")
    if n == 1:
        return Factorization(1, ())
    t = tables if tables is not None else default_tables()
    fac: dict[int, int] = {}
    m = n
    if m <= t.limit:
        lpf = t.least_prime_factor
        while m > 1:
            p = int(lpf[m])
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            fac[p] = fac.get(p, 0) + e
        return Factorization(n, tuple(sorted(fac.items())))
    for p in t.primes:
        p = int(p)
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            fac[p] = e
    if m > 1:
        if m <= t.limit or is_prime(m) or m < (t.limit + 1) ** 2:
            # below limit**2 a cofactor with no sieved prime factor is prime
            fac[m] = fac.get(m, 0) + 1
        else:
            stack = [m]
            while stack:
                c = stack.pop()
                if is_prime(c):
                    fac[c] = fac.get(c, 0) + 1
                    continue
                g = _pollard_brent(c)
                stack.append(g)
                stack.append(c // g)
    return Factorization(n, tuple(sorted(fac.items())))


# --------------------------------------------------------------------------
# derived arithmetic functions
# --------------------------------------------------------------------------

FactorizationLike = Union[Factorization, int]


def _as_factorization(f: FactorizationLike) -> Factorization:
    return f if isinstance(f, Factorization) else factorize(f)


def divisor_count(f: FactorizationLike) -> int:
    """d(n): the number of positive divisors, ``prod(e + 1)``."""
    fac = _as_factorization(f)
    out = 1
    for _, e in fac.factors:
        out *= e + 1
    return out


def euler_phi(f: FactorizationLike) -> int:
    """Euler's totient via the multiplicative formula; ``phi(1) = 1``."""
    fac = _as_factorization(f)
    out = 1
    for p, e in fac.factors:
        out *= (p - 1) * p ** (e - 1)
    return out


def big_omega(f: FactorizationLike) -> int:
    """Number of prime factors counted with multiplicity."""
    fac = _as_factorization(f)
    return sum(e for _, e in fac.factors)


def least_prime_factor(n: int) -> int:
    """Smallest prime dividing ``n``; rejects ``n < 2``."""
    if n < 2:
        raise DomainError(f"least_prime_factor undefined for n = {n}")
    t = default_tables()
    if n <= t.limit:
        return int(t.least_prime_factor[n])
    return factorize(n).factors[0][0]


def greatest_prime_factor(n: int) -> int:
    """Largest prime dividing ``n``; rejects ``n < 2``."""
    if n < 2:
        raise DomainError(f"greatest_prime_factor undefined for n = {n}")
    return factorize(n).factors[-1][0]


def smooth_count(x: int, y: float) -> int:
    """Count integers ``1 <= n <= x`` whose prime factors are all ``<= y``.

    Parameters
    ----------
    x : int
        Range bound, ``x >= 1``.
    y : float
        Smoothness bound, ``y >= 1``; ``n = 1`` always counts.

    Returns
    -------
    int

    Notes
    -----
    Enumeration by depth-first search over the sieved primes ``<= y``:
    the cost equals the returned count, which is what desk-scale
    checks of sparse smooth sets need.  ``y >= x`` short-circuits to
    ``x`` without enumerating.
    """
    if x < 1:
        raise DomainError(f"smooth_count requires x >= 1, got {x}")
    if y < 1:
        raise DomainError(f"smooth_count requires y >= 1, got {y}")
    if y >= x:
        return x
    ybound = int(math.floor(y))
    if ybound < 2:
        return 1
    t = default_tables()
    if ybound > t.limit:
        t = sieve_tables(ybound, with_phi=False)
    primes = [int(p) for p in t.primes[t.primes <= ybound]]

    def count(i: int, rem: int) -> int:
        total = 1
        for k in range(i, len(primes)):
            p = primes[k]
            if p > rem:
                break
            r = rem // p
            while True:
                total += count(k + 1, r)
                if r < p:
                    break
                r //= p
        return total

    return count(0, x)


# --------------------------------------------------------------------------
# squared-divisor partial sums
# --------------------------------------------------------------------------

_D2_CHUNK = 1 << 16


def d2_over_n_partial(x: int, *, exact: bool = False,
                      tables: Optional[ArithTables] = None,
                      workers: int = 1) -> Union[float, Fraction]:
    """``sum(d(n)**2 / n for n <= x)`` with controlled accumulation.

    Parameters
    ----------
    x : int
        Upper summation bound, ``x >= 1``.
    exact : bool, optional
        Accumulate in exact rationals (validation mode, ``x <= 20000``).
    tables : ArithTables, optional
        Reused sieve tables covering ``x``.
    workers : int, optional
        Worker threads for the chunked compensated sum.  Chunk
        boundaries are fixed multiples of ``2**16`` independent of
        ``workers``, and the per-chunk sums are combined in index
        order, so the result is bit-identical for any worker count.

    Returns
    -------
    float or fractions.Fraction
    """
    if x < 1:
        raise DomainError(f"d2_over_n_partial requires x >= 1, got {x}")
    if exact:
        if x > 20_000:
            raise DomainError("exact mode is a validation path; x <= 20000")
        t = tables if tables is not None else default_tables()
        if x > t.limit:
            t = sieve_tables(x)
        d = t.divisor_count
        return sum(Fraction(int(d[n]) ** 2, n) for n in range(1, x + 1))
    t = tables if tables is not None else (
        default_tables() if x <= _DEFAULT_LIMIT else sieve_tables(x)
    )
    if x > t.limit:
        t = sieve_tables(x)
    d = t.divisor_count

    def chunk_sum(lo: int) -> float:
        hi = min(lo + _D2_CHUNK, x + 1)
        dd = d[lo:hi].astype(np.float64)
        nn = np.arange(lo, hi, dtype=np.float64)
        return math.fsum((dd * dd / nn).tolist())

    starts = list(range(1, x + 1, _D2_CHUNK))
    if workers <= 1:
        parts = [chunk_sum(lo) for lo in starts]
    else:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(chunk_sum, starts))
    return math.fsum(parts)


def d2_partial(x: int, tables: Optional[ArithTables] = None) -> int:
    """``sum(d(n)**2 for n <= x)`` as an exact integer."""
    if x < 1:
        raise DomainError(f"d2_partial requires x >= 1, got {x}")
    t = tables if tables is not None else (
        default_tables() if x <= _DEFAULT_LIMIT else sieve_tables(x)
    )
    if x > t.limit:
        t = sieve_tables(x)
    d = t.divisor_count[1:x + 1].astype(np.int64)
    return int(np.sum(d * d))


def integer_cbrt(n: int) -> int:
    """Exact ``floor(n ** (1/3))`` for ``n >= 0`` (float seed, integer fixup)."""
    if n < 0:
        raise DomainError(f"integer_cbrt requires n >= 0, got {n}")
    if n == 0:
        return 0
    r = round(n ** (1.0 / 3.0))
    while r > 0 and r * r * r > n:
        r -= 1
    while (r + 1) * (r + 1) * (r + 1) <= n:
        r += 1
    return r


def primes_up_to(limit: int) -> Sequence[int]:
    """Ascending primes ``<= limit`` (convenience over the sieve)."""
    if limit < 2:
        return []
    t = default_tables()
    if limit > t.limit:
        t = sieve_tables(limit, with_phi=False)
    return [int(p) for p in t.primes[t.primes <= limit]]
