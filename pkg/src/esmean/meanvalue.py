"""Prime mean values of the solution-type counts and the weight-sum chain.

sum_f1 / sum_f2 accumulate the per-prime Type I / Type II ordered counts
over all primes below x.  The weight sum is the double sum

    x * d(4*l*a**2 + 1) / (phi(4*a*l) * log(1 + x/(a*l)))    over a*l <= x,

evaluated directly and re-assembled from dyadic (a, l) blocks; the block
form carries the display weight 1/(1 + log2(x) - i - j) used by the
closing majorant chain, whose four lines are reproduced numerically by
final_chain with each line provably at least the previous one.
"""

from __future__ import annotations

import math
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import arith, solutions
from .errors import DomainError, InvariantViolation
from .reports import MeanValueReport, SumReport, WeightSumReport


def split_table(x: int, tables: Optional[arith.ArithTables] = None,
                workers: int = 1) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-prime (f1, f2) for every prime p < x, as aligned arrays.

    The p = 2 row comes from enumeration plus classification; odd rows
    from the divisor-structure counter.  A prime with f1 + f2 = 0 would
    witness a counterexample to the underlying conjecture (or a bug) and
    raises InvariantViolation loudly rather than flowing into sums.
    """
    if x < 3:
        raise DomainError(f"x must be >= 3, got {x}")
    t = tables if tables is not None else arith.default_tables()
    if t.limit < x - 1:
        t = arith.sieve_tables(x)
    ps = t.primes[t.primes < x].astype(np.int64)
    f1 = np.zeros(len(ps), np.int64)
    f2 = np.zeros(len(ps), np.int64)
    if len(ps) and ps[0] == 2:
        two = solutions.type_split(2)
        f1[0], f2[0] = two.f1, two.f2
        odd = ps[1:]
    else:
        odd = ps
    if len(odd):
        of1, of2 = solutions.type_split_many(odd, tables=t, workers=workers)
        f1[len(ps) - len(odd):] = of1
        f2[len(ps) - len(odd):] = of2
    zero = np.nonzero((f1 + f2) == 0)[0]
    if len(zero):
        raise InvariantViolation(
            f"no solution found for prime p = {int(ps[zero[0]])}; "
            "this contradicts the verified desk range and signals a bug "
            "or a genuine mathematical event")
    return ps, f1, f2


def sum_f1(x: int, tables: Optional[arith.ArithTables] = None,
           workers: int = 1) -> int:
    """Sum of Type I ordered counts over primes p < x (x >= 3)."""
    _, f1, _ = split_table(x, tables, workers)
    return int(f1.sum())


def sum_f2(x: int, tables: Optional[arith.ArithTables] = None,
           workers: int = 1) -> int:
    """Sum of Type II ordered counts over primes p < x (x >= 3)."""
    _, _, f2 = split_table(x, tables, workers)
    return int(f2.sum())


def envelope_values(x: int) -> Dict[str, float]:
    """The four reference envelopes at x (natural logs throughout)."""
    lx = math.log(x)
    llx = math.log(lx)
    return {
        "x_log2x": x * lx ** 2,
        "x_log2x_loglogx": x * lx ** 2 * llx,
        "x_log5x_loglog2x": x * lx ** 5 * llx ** 2,
        "x_exp_logx_over_loglogx": x * math.exp(lx / llx),
    }


def mean_value_report(x: int, tables: Optional[arith.ArithTables] = None,
                      workers: int = 1,
                      precomputed: Optional[Tuple[int, int]] = None
                      ) -> MeanValueReport:
    """Assemble both mean values with every envelope and ratio at x.

    ``precomputed`` optionally supplies (sum_f1, sum_f2) so callers that
    already hold the split table don't recompute it.
    """
    if x < 3:
        raise DomainError(f"x must be >= 3, got {x}")
    if precomputed is not None:
        s1, s2 = precomputed
    else:
        _, f1, f2 = split_table(x, tables, workers)
        s1, s2 = int(f1.sum()), int(f2.sum())
    env = envelope_values(x)
    ratios = {
        "f1_over_x_log2x": s1 / env["x_log2x"],
        "f1_over_x_log5x_loglog2x": s1 / env["x_log5x_loglog2x"],
        "f1_over_x_exp_logx_over_loglogx": s1 / env["x_exp_logx_over_loglogx"],
        "f2_over_x_log2x": s2 / env["x_log2x"],
        "f2_over_x_log2x_loglogx": s2 / env["x_log2x_loglogx"],
    }
    return MeanValueReport(x=x, sum_f1=s1, sum_f2=s2,
                           envelopes=env, ratios=ratios)


# --------------------------------------------------------------------------
# the reduction weight sum and its dyadic block form
# --------------------------------------------------------------------------

def _dyadic_index(v: int) -> int:
    # v = 1 -> designated block -1; otherwise i with 2**i < v <= 2**(i+1)
    if v == 1:
        return -1
    return (v - 1).bit_length() - 1


def reduction_weight_sum(x: int,
                         tables: Optional[arith.ArithTables] = None
                         ) -> WeightSumReport:
    """Direct and block-decomposed evaluation of the weight sum at x.

    The direct value sums x*d(4*l*a**2+1)/(phi(4*a*l)*log(1 + x/(a*l)))
    over all pairs with a*l <= x in fixed (a, l) order.  Blocks cover
    2^i < a <= 2^(i+1), 2^j < l <= 2^(j+1) with the designated index -1
    holding a = 1 (resp. l = 1); block sums contain the full exact terms,
    so their total must reproduce the direct value up to accumulation
    rounding.  Each block row also records the display weight
    1/(1 + log2(x) - i - j).

    Raises
    ------
    DomainError
        If x < 16 (the decomposition needs a few nontrivial blocks).
    """
    if x < 16:
        raise DomainError(f"x must be >= 16, got {x}")
    t = tables if tables is not None else arith.default_tables()
    if t.limit < 4 * x:
        t = arith.sieve_tables(4 * x)
    phi = t.phi
    if phi is None:
        raise DomainError("weight sum needs totient tables (with_phi=True)")
    lg2x = math.log2(x)

    terms: List[float] = []
    blocks: Dict[Tuple[int, int], List[float]] = {}
    for a in range(1, x + 1):
        i = _dyadic_index(a)
        asq4 = 4 * a * a
        for l in range(1, x // a + 1):
            j = _dyadic_index(l)
            d = arith.divisor_count(arith.factorize(asq4 * l + 1, t))
            term = x * d / (int(phi[4 * a * l]) * math.log1p(x / (a * l)))
            terms.append(term)
            blocks.setdefault((i, j), []).append(term)

    direct = math.fsum(terms)
    rows = []
    for (i, j) in sorted(blocks):
        bsum = math.fsum(blocks[(i, j)])
        rows.append((i, j, bsum, 1.0 / (1.0 + lg2x - i - j)))
    dyadic = math.fsum(r[2] for r in rows)
    return WeightSumReport(x=x, direct_value=direct, dyadic_value=dyadic,
                           block_table=tuple(rows))


def final_chain(x: int) -> SumReport:
    """The closing majorant chain evaluated numerically at x.

    Four lines, each an upper bound for the previous one:

    1. double sum of 1/(1 + log2(x) - i - j) over 0 <= i <= K,
       0 <= j <= K - i, where K = floor(log2 x);
    2. per-i harmonic numbers H(K - i + 1) (the inner sum with log2(x)
       rounded down to K, which only shrinks denominators);
    3. per-i majorant log2(K - i + 2), which dominates H(K - i + 1) for
       every K - i >= 0 (equality at K - i = 0);
    4. the closed form (K + 1) * log2(K + 2).

    Line ratios are reported and must all be >= 1; at x = 2**K lines 1
    and 2 coincide exactly.
    """
    if x < 16:
        raise DomainError(f"x must be >= 16, got {x}")
    k = int(math.floor(math.log2(x)))
    lg2x = math.log2(x)

    line1 = math.fsum(1.0 / (1.0 + lg2x - i - j)
                      for i in range(k + 1) for j in range(k - i + 1))
    line2 = math.fsum(1.0 / h
                      for i in range(k + 1) for h in range(1, k - i + 2))
    line3 = math.fsum(math.log2(k - i + 2) for i in range(k + 1))
    line4 = (k + 1) * math.log2(k + 2)

    return SumReport(
        label="final_chain",
        params={"x": x, "k": k},
        values={"line1_block_weights": line1,
                "line2_harmonic": line2,
                "line3_log_majorant": line3,
                "line4_closed_form": line4},
        envelopes={},
        ratios={"line2_over_line1": line2 / line1,
                "line3_over_line2": line3 / line2,
                "line4_over_line3": line4 / line3},
    )
