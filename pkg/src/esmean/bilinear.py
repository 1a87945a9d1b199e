"""Dyadic-box divisor sums, the smooth/rough split, and case bookkeeping.

The central object is the exact integer sum of d(4*l*a**2 + 1) over a
dyadic box V < l <= 2V, W < a <= 2W, together with a four-way partition
of the pairs driven by the smooth/rough factorization split of each
value.  The sum is computed by a per-column congruence sieve (roots of
4*a**2*l + 1 = 0 mod p for every prime p up to the cube root of the
largest value), with the surviving cofactor certified prime, a prime
square, or a product of two primes — never anything else, since three
factors would exceed the value.

Everything here is exact: divisor counts are integers, the partition
sums add to the total sum with integer equality, and threshold
comparisons happen in the one documented float64 convention shared by
the sweep kernel and the pure-Python classifier.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import _kernels, arith
from .errors import (CapacityError, ConfigurationError, DomainError,
                     InvariantViolation)
from .reports import SumReport

#: the sweep kernel's modular arithmetic is proven exact up to here
KERNEL_VALUE_LIMIT = (1 << 53) + 2


class CaseLabel(enum.Enum):
    """Partition of box pairs by the rough part of 4*l*a**2 + 1.

    ROUGH
        The rough cofactor c is 1 or its least prime exceeds sqrt(Z):
        d(n) is controlled through d(b) times a bounded power.
    SMALL_SMOOTH
        Least prime of c at most sqrt(Z) and smooth part b <= sqrt(Z).
    DENSE_SMOOTH
        b > sqrt(Z) and the least prime of c is at most the density
        threshold T = log(W) * log(log(W)).
    MIDRANGE
        Everything else: b > sqrt(Z), T < least prime of c <= sqrt(Z).
    """

    ROUGH = 0
    SMALL_SMOOTH = 1
    DENSE_SMOOTH = 2
    MIDRANGE = 3


_CASE_KEYS = tuple(lab.name.lower() for lab in CaseLabel)


@dataclass(frozen=True)
class BcSplit:
    """Coprime split n = b * c into a smooth prefix and a rough remainder.

    Attributes
    ----------
    n : int
        The split integer.
    b : int
        Product of the maximal prefix of n's ascending prime powers with
        product <= z.
    c : int
        The coprime remainder n // b.
    least_prime_of_c : int or None
        Smallest prime of c; None exactly when c == 1.
    z : float
        The smoothness budget the split was computed against.
    """

    n: int
    b: int
    c: int
    least_prime_of_c: Optional[int]
    z: float


@dataclass(frozen=True)
class BoxSpec:
    """A dyadic summation box V < l <= 2V, W < a <= 2W with split exponent.

    Parameters
    ----------
    V, W : int
        Positive dyadic anchors.
    theta : float, optional
        Split exponent in (0, 1/2]; the smoothness budget is Z = W**theta.

    Notes
    -----
    Derived thresholds are exposed as properties and may be degenerate at
    desk scale (T >= sqrt(Z)); strict classification refuses degenerate
    boxes while the sweep labels under the documented total precedence
    and flags the degeneracy in its report.
    """

    V: int
    W: int
    theta: float = 0.05

    def __post_init__(self) -> None:
        if self.V < 1 or self.W < 1:
            raise DomainError(f"V and W must be positive, got {self.V}, {self.W}")
        if not (0.0 < self.theta <= 0.5):
            raise DomainError(f"theta must lie in (0, 1/2], got {self.theta}")

    @property
    def z(self) -> float:
        """Smoothness budget W**theta."""
        return float(self.W) ** self.theta

    @property
    def sqrt_z(self) -> float:
        return math.sqrt(self.z)

    @property
    def t_threshold(self) -> Optional[float]:
        """Density threshold log(W)*log(log(W)); None when undefined (W < 3)."""
        lw = math.log(self.W)
        if lw <= 1.0:
            return None
        return lw * math.log(lw)

    @property
    def r0(self) -> Optional[int]:
        """Depth limit floor(log Z / log T); None when T <= 1 or Z < 2."""
        t = self.t_threshold
        if t is None or t <= 1.0 or self.z < 2.0:
            return None
        return int(math.floor(math.log(self.z) / math.log(t)))

    @property
    def degenerate(self) -> bool:
        """True when the case thresholds collapse (T >= sqrt(Z) or T undefined)."""
        t = self.t_threshold
        return t is None or t >= self.sqrt_z

    @property
    def max_value(self) -> int:
        """Largest summand argument in the box: 4*(2V)*(2W)**2 + 1."""
        return 32 * self.V * self.W * self.W + 1

    def pair_count(self) -> int:
        return self.V * self.W


def split_bc(n: int, z: float,
             tables: Optional[arith.ArithTables] = None) -> BcSplit:
    """Split n into the maximal smooth prime-power prefix b times c.

    Parameters
    ----------
    n : int
        Positive integer to split.
    z : float
        Smoothness budget; must be at least 2.
    tables : ArithTables, optional
        Sieve tables forwarded to factorization.

    Returns
    -------
    BcSplit
        With b the product of the longest ascending prefix of n's prime
        powers keeping b <= z, and c the coprime remainder.

    Raises
    ------
    DomainError
        If n < 1 or z < 2.
    """
    if n < 1:
        raise DomainError(f"split_bc requires n >= 1, got {n}")
    if z < 2:
        raise DomainError(f"smoothness budget must be >= 2, got {z}")
    zi = int(math.floor(z))
    b = 1
    c = 1
    least: Optional[int] = None
    for p, e in arith.factorize(n, tables).factors:
        pe = p ** e
        if least is None and b * pe <= zi:
            b *= pe
        else:
            if least is None:
                least = p
            c *= pe
    return BcSplit(n=n, b=b, c=c, least_prime_of_c=least, z=float(z))


def classify_case(split: BcSplit, box: BoxSpec, *,
                  allow_degenerate: bool = False) -> CaseLabel:
    """Assign the case label of a split pair under the box thresholds.

    Parameters
    ----------
    split : BcSplit
        Must have been computed with z equal to box.z.
    box : BoxSpec
        Supplies sqrt(Z) and the density threshold T.
    allow_degenerate : bool, optional
        Accept boxes whose thresholds collapse (T >= sqrt(Z)) and label
        under the same total precedence the sweep kernel uses.  Off by
        default: a degenerate box usually signals a configuration
        mistake, not an intended partition.

    Returns
    -------
    CaseLabel

    Raises
    ------
    ConfigurationError
        If split.z != box.z, or the box is degenerate and
        ``allow_degenerate`` is not set (message names the violated
        inequality).
    """
    if split.z != box.z:
        raise ConfigurationError(
            f"split budget z = {split.z} differs from box Z = {box.z}")
    t = box.t_threshold
    sqz = box.sqrt_z
    if not allow_degenerate:
        if t is None:
            raise ConfigurationError(
                f"W = {box.W} leaves log(W)*log(log(W)) undefined; "
                "T < sqrt(Z) is required")
        if t >= sqz:
            raise ConfigurationError(
                f"degenerate thresholds: log(W)*log(log(W)) = {t} >= "
                f"sqrt(Z) = {sqz}; T < sqrt(Z) is required")
    tval = np.float64(-1.0 if t is None else t)
    pc = split.least_prime_of_c
    if pc is None or np.float64(pc) > np.float64(sqz):
        return CaseLabel.ROUGH
    if np.float64(split.b) <= np.float64(sqz):
        return CaseLabel.SMALL_SMOOTH
    if np.float64(pc) <= tval:
        return CaseLabel.DENSE_SMOOTH
    return CaseLabel.MIDRANGE


# --------------------------------------------------------------------------
# the box sweep
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class _SweepTables:
    primes: np.ndarray
    pmag: np.ndarray
    maxq: np.ndarray
    prinv: np.ndarray
    vmod: np.ndarray
    bsq: int
    cbrt: int


def _sweep_tables(box: BoxSpec) -> _SweepTables:
    b = arith.integer_cbrt(box.max_value)
    t = arith.sieve_tables(max(b, 3), with_phi=False)
    pr = t.primes[(t.primes <= b) & (t.primes > 2)].astype(np.uint64)
    pmag = np.array([pow(int(p), -1, 1 << 64) for p in pr], np.uint64)
    maxq = np.array([( (1 << 64) - 1) // int(p) for p in pr], np.uint64)
    prinv = 1.0 / pr.astype(np.float64)
    vmod = np.array([(box.V + 1) % int(p) for p in pr], np.int64)
    return _SweepTables(primes=pr, pmag=pmag, maxq=maxq, prinv=prinv,
                        vmod=vmod, bsq=b * b, cbrt=b)


@dataclass(frozen=True)
class SweepResult:
    """Raw accumulator totals of one box sweep."""

    box: BoxSpec
    total: int
    pairs: int
    case_sums: Tuple[int, int, int, int]
    case_counts: Tuple[int, int, int, int]
    max_omega_c: int
    case_mode: bool


def _reduce_outputs(box: BoxSpec, outs: Sequence[np.ndarray],
                    case_mode: bool) -> SweepResult:
    total = np.zeros(14, dtype=object)
    for o in outs:
        for k in range(13):
            total[k] += int(o[k])
        total[13] = max(total[13], int(o[13]))
    if total[10] or total[11]:
        raise InvariantViolation(
            f"congruence sieve self-check failed: {total[10]} bad roots, "
            f"{total[11]} marked non-divisors")
    if total[12]:
        raise InvariantViolation(
            f"{total[12]} cofactor certifications exhausted the parameter "
            "walk; inputs violated the nonsquare/no-small-factor contract")
    return SweepResult(
        box=box,
        total=int(total[0]),
        pairs=int(total[1]),
        case_sums=tuple(int(total[2 + i]) for i in range(4)),
        case_counts=tuple(int(total[6 + i]) for i in range(4)),
        max_omega_c=int(total[13]),
        case_mode=case_mode,
    )


def sweep_box(box: BoxSpec, *, case_mode: bool = False,
              workers: int = 1, validate: bool = True) -> SweepResult:
    """Run the congruence-sieve sweep over a box.

    Parameters
    ----------
    box : BoxSpec
    case_mode : bool, optional
        Also accumulate the four-way case partition.  A budget Z < 2
        admits no smooth prefix on the odd values 4*l*a**2 + 1, so the
        whole box lands in the rough class; that is the exact partition,
        not an error.
    workers : int, optional
        Thread count.  Column chunks are fixed multiples of
        ``max(1, 2**20 // V)`` columns regardless of ``workers`` and the
        per-chunk integer accumulators are reduced in column order, so
        results are identical for every worker count.
    validate : bool, optional
        Keep the in-kernel root re-check on (two extra multiplies per
        root; leave on outside microbenchmarks).

    Returns
    -------
    SweepResult

    Raises
    ------
    CapacityError
        If the box values exceed the kernel's exactness limit.
    InvariantViolation
        If any kernel self-check tripped (never expected).
    """
    z_floor = int(math.floor(box.z)) if case_mode else 0
    t = box.t_threshold
    t_f = float(t) if (case_mode and t is not None) else -1.0
    sqz_f = box.sqrt_z if case_mode else 0.0

    return _sweep_with_thresholds(box, case_mode, z_floor, t_f, sqz_f,
                                  workers, validate)


def _sweep_with_thresholds(box: BoxSpec, case_mode: bool, z_floor: int,
                           t_f: float, sqz_f: float, workers: int,
                           validate: bool) -> SweepResult:
    if box.max_value > KERNEL_VALUE_LIMIT:
        raise CapacityError(
            f"box values reach {box.max_value} > {KERNEL_VALUE_LIMIT}, "
            "beyond the kernel's exact-arithmetic range")

    tab = _sweep_tables(box)
    chunk = max(1, (1 << 20) // box.V)
    spans = [(lo, min(lo + chunk, 2 * box.W + 1))
             for lo in range(box.W + 1, 2 * box.W + 1, chunk)]
    empty_u32 = np.zeros(0, np.uint32)
    empty_u8 = np.zeros(0, np.uint8)

    def run(span: Tuple[int, int]) -> np.ndarray:
        out = np.zeros(14, np.uint64)
        _kernels.sweep_chunk(
            span[0], span[1], box.V, tab.primes, tab.pmag, tab.maxq,
            tab.prinv, tab.vmod, np.uint64(tab.bsq),
            1 if case_mode else 0, np.uint64(z_floor), t_f, sqz_f,
            1 if validate else 0, empty_u32, empty_u8, out)
        return out

    if workers <= 1:
        outs = [run(span) for span in spans]
    else:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            outs = list(ex.map(run, spans))
    return _reduce_outputs(box, outs, case_mode)


def sweep_box_dump(box: BoxSpec, *, case_mode: bool = True
                   ) -> Tuple[SweepResult, np.ndarray, np.ndarray]:
    """Single-threaded sweep that also returns per-pair d values and labels.

    Row-major layout: index (a - W - 1) * V + (l - V - 1).  Meant for
    oracle comparisons on small boxes, not for production sums.
    """
    if box.max_value > KERNEL_VALUE_LIMIT:
        raise CapacityError("dump sweep restricted to kernel-range boxes")
    z_floor = int(math.floor(box.z)) if case_mode else 0
    t = box.t_threshold
    t_f = float(t) if (case_mode and t is not None) else -1.0
    sqz_f = box.sqrt_z if case_mode else 0.0
    tab = _sweep_tables(box)
    dump_d = np.zeros(box.pair_count(), np.uint32)
    dump_lab = np.zeros(box.pair_count() if case_mode else 0, np.uint8)
    out = np.zeros(14, np.uint64)
    _kernels.sweep_chunk(
        box.W + 1, 2 * box.W + 1, box.V, tab.primes, tab.pmag, tab.maxq,
        tab.prinv, tab.vmod, np.uint64(tab.bsq), 1 if case_mode else 0,
        np.uint64(z_floor), t_f, sqz_f, 1, dump_d, dump_lab, out)
    return _reduce_outputs(box, [out], case_mode), dump_d, dump_lab


def bilinear_divisor_sum(box: BoxSpec, *, workers: int = 1) -> SumReport:
    """Exact sum of d(4*l*a**2 + 1) over the box, with its envelope ratio.

    Parameters
    ----------
    box : BoxSpec
    workers : int, optional
        Forwarded to :func:`sweep_box`; the sum is worker-invariant.

    Returns
    -------
    SumReport
        values: the integer sum and the pair count; envelopes: the
        reference V*W*log(2W)**4; ratios: sum over envelope.
    """
    res = sweep_box(box, case_mode=False, workers=workers)
    env = box.V * box.W * math.log(2 * box.W) ** 4
    return SumReport(
        label="bilinear_divisor_sum",
        params={"V": box.V, "W": box.W, "theta": box.theta},
        values={"sum": res.total, "pairs": res.pairs},
        envelopes={"vw_log4_2w": env},
        ratios={"sum_over_vw_log4_2w": res.total / env},
    )


def _case_report(label: str, box: BoxSpec, res: SweepResult,
                 z_source: str, thresholds: Optional[BoxSpec] = None
                 ) -> SumReport:
    thr = box if thresholds is None else thresholds
    log4 = math.log(2 * box.W) ** 4
    vw = box.V * box.W
    env = {
        "rough": vw * log4,
        "small_smooth": float(vw),
        "dense_smooth": float(vw),
        "midrange": vw * log4,
    }
    values: Dict[str, int] = {"sum": res.total, "pairs": res.pairs,
                              "max_omega_c": res.max_omega_c}
    ratios: Dict[str, float] = {}
    for i, key in enumerate(_CASE_KEYS):
        values[f"sum_{key}"] = res.case_sums[i]
        values[f"count_{key}"] = res.case_counts[i]
        ratios[f"{key}_over_envelope"] = res.case_sums[i] / env[key]
    return SumReport(
        label=label,
        params={"V": box.V, "W": box.W, "theta": box.theta,
                "z": thr.z, "sqrt_z": thr.sqrt_z,
                "t_threshold": -1.0 if thr.t_threshold is None else thr.t_threshold,
                "degenerate": 1 if thr.degenerate else 0,
                "z_source": z_source},
        values=values,
        envelopes=env,
        ratios=ratios,
    )


def case_contributions(box: BoxSpec, *, workers: int = 1) -> SumReport:
    """Per-case divisor sums over the box; the four sums add to the total.

    The pair partition follows the sweep's total precedence and is exact;
    on degenerate boxes (flagged in params) the upper two classes are
    empty by construction rather than by the strict threshold order.
    """
    res = sweep_box(box, case_mode=True, workers=workers)
    return _case_report("case_contributions", box, res, z_source="W")


def linear_branch_sum(box: BoxSpec, *, workers: int = 1) -> SumReport:
    """Case machinery with the roles of the two ranges swapped (W < V).

    The summed values are unchanged — only the smoothness budget now
    comes from V (Z = V**theta, T = log(V)*log(log(V))), matching the
    regime where the congruence in l is linear and each modulus
    contributes at most one root (see
    :func:`esmean.congruence.linear_root_count`).

    Raises
    ------
    DomainError
        If W >= V (the swapped analysis assumes the a-range is shorter).
    """
    if box.W >= box.V:
        raise DomainError(
            f"linear branch requires W < V, got V = {box.V}, W = {box.W}")
    mirror = BoxSpec(V=box.V, W=box.V, theta=box.theta)  # thresholds from V
    z_floor = int(math.floor(mirror.z))
    t = mirror.t_threshold
    t_f = float(t) if t is not None else -1.0
    res = _sweep_with_thresholds(box, True, z_floor, t_f, mirror.sqrt_z,
                                 workers, True)
    return _case_report("linear_branch_sum", box, res, z_source="V",
                        thresholds=mirror)


# --------------------------------------------------------------------------
# per-prime tail quantities
# --------------------------------------------------------------------------

def min_exponent_exceeding_sqrt(p: int, z: float) -> int:
    """Smallest s with p**s > sqrt(z), for primes p <= sqrt(z).

    The comparison is exact: p**s > sqrt(z) iff p**(2s) > z, evaluated
    in rational arithmetic on the exact binary value of z.

    Raises
    ------
    DomainError
        If p is not prime, z < 4, or p > sqrt(z).
    """
    if not arith.is_prime(p):
        raise DomainError(f"p = {p} is not prime")
    if z < 4:
        raise DomainError(f"z must be >= 4 for any prime to qualify, got {z}")
    zq = Fraction(z)
    if Fraction(p) ** 2 > zq:
        raise DomainError(f"p = {p} exceeds sqrt(z) for z = {z}")
    s = 1
    while Fraction(p) ** (2 * s) <= zq:
        s += 1
    return s


#: friendly alias mirroring the usual notation in discussions
s_p = min_exponent_exceeding_sqrt


@dataclass(frozen=True)
class SmallSmoothTail:
    """Exact tail sum over small primes and its per-term majorant data.

    Attributes
    ----------
    z : float
        The budget; primes p with p*p <= z contribute.
    tail : Fraction
        Exact sum of p**(-s_p).
    majorant : float
        pi(z**(1/4)) * z**(-1/2) plus the sum of p**(-2) over primes in
        (z**(1/4), z**(1/2)].
    majorant_exact : Fraction or None
        Exact rational majorant when sqrt(z) is an integer, else None.
    terms : tuple
        Rows (p, s_p, term_numerator=1, term_denominator=p**s_p).
    """

    z: float
    tail: Fraction
    majorant: float
    majorant_exact: Optional[Fraction]
    terms: Tuple[Tuple[int, int, int, int], ...]


def small_smooth_tail(z: float) -> SmallSmoothTail:
    """Sum p**(-s_p) over primes p <= sqrt(z), with the proof majorant.

    Every term is exactly dominated: for p**4 <= z the term is below
    z**(-1/2) because p**(2*s_p) > z, and for larger p it is at most
    p**(-2) because s_p >= 2.  Tests assert both dominations per term.

    Raises
    ------
    DomainError
        If z < 4 (no prime has p*p <= z).
    """
    if z < 4:
        raise DomainError(f"need z >= 4, got {z}")
    zq = Fraction(z)
    zi = int(math.floor(z))
    sq = math.isqrt(zi)
    while sq * sq > zi:
        sq -= 1
    # primes with p**2 <= z, exact on the binary value of z
    limit = sq + 1
    ps = [p for p in arith.primes_up_to(limit + 1) if Fraction(p) ** 2 <= zq]
    terms: List[Tuple[int, int, int, int]] = []
    tail = Fraction(0)
    quarter_count = 0
    square_sum = Fraction(0)
    for p in ps:
        s = min_exponent_exceeding_sqrt(p, z)
        den = p ** s
        tail += Fraction(1, den)
        terms.append((p, s, 1, den))
        if Fraction(p) ** 4 <= zq:
            quarter_count += 1
        else:
            square_sum += Fraction(1, p * p)
    majorant = quarter_count / math.sqrt(z) + float(square_sum)
    exact: Optional[Fraction] = None
    if sq * sq == zi and Fraction(zi) == zq:
        exact = Fraction(quarter_count, sq) + square_sum
    return SmallSmoothTail(z=float(z), tail=tail, majorant=majorant,
                           majorant_exact=exact, terms=tuple(terms))


def omega_bound_check(split: BcSplit, box: BoxSpec, r: int) -> bool:
    """Check Omega(c) <= 3*log(N)/log(p(c)) for a midrange split.

    N is the largest value in the box.  Preconditions pin the midrange
    window: 2 <= r <= r0 and Z**(1/(r+1)) < p(c) <= Z**(1/r).

    Raises
    ------
    DomainError
        If the split is not midrange for the box, r is out of range, or
        p(c) misses the window.
    """
    r0 = box.r0
    if r0 is None or r0 < 2 or not (2 <= r <= r0):
        raise DomainError(f"r = {r} outside 2..r0 = {r0}")
    lab = classify_case(split, box, allow_degenerate=True)
    if lab is not CaseLabel.MIDRANGE:
        raise DomainError(f"split of {split.n} is {lab.name}, not MIDRANGE")
    pc = split.least_prime_of_c
    assert pc is not None
    zlo = box.z ** (1.0 / (r + 1))
    zhi = box.z ** (1.0 / r)
    if not (zlo < pc <= zhi):
        raise DomainError(
            f"p(c) = {pc} outside (Z^(1/{r + 1}), Z^(1/{r})] = ({zlo}, {zhi}]")
    om = arith.big_omega(arith.factorize(split.c))
    bound = 3.0 * math.log(box.max_value) / math.log(pc)
    return om <= bound


# --------------------------------------------------------------------------
# smooth-restricted squared-divisor sum
# --------------------------------------------------------------------------

def smooth_d2_over_n_sum(z: float, r: int, *, n_max: Optional[int] = None,
                         workers: int = 1) -> SumReport:
    """Sum d(n)**2 / n over z**(1/2) <= n <= n_max with P(n) <= z**(1/r).

    Parameters
    ----------
    z : float
        Base scale; must satisfy z >= 4.
    r : int
        Smoothness depth, 1 <= r <= log(z)/log(log(z)).
    n_max : int, optional
        Truncation point (default 10**6); recorded in the report along
        with a certified bound on the discarded tail (Rankin's trick at
        exponent 1/2).
    workers : int, optional
        Unused compute-wise (the enumeration is a single DFS) but kept
        so callers can treat all sums uniformly.

    Returns
    -------
    SumReport
        values: lhs (the truncated sum) and n_max; envelopes: the
        reference exp(sum of 4/p over p <= z, minus (r/10)*log(r)) and
        the truncation tail bound; ratios: lhs over the envelope.
    """
    if z < 4:
        raise DomainError(f"need z >= 4, got {z}")
    lz = math.log(z)
    if lz <= 1.0 or math.log(lz) <= 0.0:
        raise DomainError(f"z = {z} too small for the depth constraint")
    rmax = lz / math.log(lz)
    if not (1 <= r <= rmax):
        raise DomainError(f"r = {r} outside 1..log z/log log z = {rmax:.3f}")
    if n_max is None:
        n_max = 1_000_000
    if n_max < 1:
        raise DomainError(f"n_max must be positive, got {n_max}")

    y = z ** (1.0 / r)
    ybound = int(math.floor(y))
    lo = math.sqrt(z)
    primes = [p for p in arith.primes_up_to(max(ybound, 2)) if p <= ybound]

    # DFS over smooth numbers <= n_max built from primes <= y, exact d**2
    acc: List[float] = []

    def walk(i: int, n: int, dcnt: int) -> None:
        if n >= lo:
            acc.append((dcnt * dcnt) / n)
        for k in range(i, len(primes)):
            p = primes[k]
            m = n * p
            e = 1
            while m <= n_max:
                walk(k + 1, m, dcnt * (e + 1))
                m *= p
                e += 1

    walk(0, 1, 1)
    lhs = math.fsum(acc)

    # reference shape from substituting d(p)**2 = 4 into the prime sum
    psum = math.fsum(4.0 / p for p in arith.primes_up_to(int(z)))
    envelope = math.exp(psum - (r / 10.0) * math.log(r))

    # Rankin tail: sum_{n > n_max, P(n) <= y} d^2/n <= n_max^(-1/2) *
    # prod_{p <= y} (1 + t)/(1 - t)^3 with t = p^(-1/2)
    prod = 1.0
    for p in primes:
        tfac = 1.0 / math.sqrt(p)
        prod *= (1.0 + tfac) / (1.0 - tfac) ** 3
    tail_bound = prod / math.sqrt(n_max)

    return SumReport(
        label="smooth_d2_over_n_sum",
        params={"z": float(z), "r": r, "n_max": n_max,
                "smooth_bound": ybound},
        values={"lhs": lhs, "terms": len(acc)},
        envelopes={"exp_prime_sum": envelope, "truncation_tail": tail_bound},
        ratios={"lhs_over_envelope": lhs / envelope},
    )
