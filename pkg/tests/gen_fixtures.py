"""Regenerate the frozen fixtures under tests/fixtures/.

Usage (from the repository root):

    python3 tests/gen_fixtures.py [solutions|typesplit|cases|weights|band|all]
                                  [--force]

Oracle-derived fixtures (solutions, typesplit, weights) are independent
recomputations via tests/oracles.py — slow loops, Fractions, trial
division.  The band and per-case tables are first-run pins: they freeze
the library's deterministic integer outputs so later changes that shift
a value get caught, while label correctness is established separately
(reference classifier comparisons in the test modules).

Every fixture is written atomically and generation is resumable: an
existing file is skipped unless --force is given.  The band step is the
long one (the largest box alone is tens of minutes of sieving).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
import time

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import oracles  # noqa: E402

FIXDIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "fixtures")


def _write(name: str, payload) -> None:
    os.makedirs(FIXDIR, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=FIXDIR, suffix=".tmp")
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=1, sort_keys=True)
        fh.write("\n")
    os.replace(tmp, os.path.join(FIXDIR, name))
    print(f"wrote {name}", flush=True)


def _have(name: str, force: bool) -> bool:
    return not force and os.path.exists(os.path.join(FIXDIR, name))


def gen_solutions(force: bool) -> None:
    if _have("solutions_small.json", force):
        print("solutions_small.json exists, skipping", flush=True)
        return
    rows = []
    for n in range(2, 201):
        fast = oracles.unit_fraction_triples(n)
        if n <= 60:  # cross-check the loop-bound derivation where affordable
            slow = oracles.unit_fraction_triples_slow(n)
            assert fast == slow, (n, fast, slow)
        rows.append({
            "n": n,
            "triples": [list(t) for t in fast],
            "ordered": sum(oracles.permutation_weight(t) for t in fast),
        })
    _write("solutions_small.json", {"max_n": 200, "rows": rows})


def gen_typesplit(force: bool) -> None:
    if _have("typesplit_small.json", force):
        print("typesplit_small.json exists, skipping", flush=True)
        return
    primes = [p for p in range(2, 1000)
              if all(p % q for q in range(2, int(math.isqrt(p)) + 1))]
    rows = []
    t0 = time.time()
    for p in primes:
        f1, f2, other = oracles.naive_type_split(p)
        rows.append([p, f1, f2, other])
    s1 = sum(r[1] for r in rows)
    s2 = sum(r[2] for r in rows)
    _write("typesplit_small.json", {
        "max_p_exclusive": 1000,
        "rows": rows,
        "sum_f1_below_1000": s1,
        "sum_f2_below_1000": s2,
    })
    print(f"typesplit oracle took {time.time() - t0:.1f}s", flush=True)


def gen_cases(force: bool) -> None:
    if _have("case_boxes.json", force):
        print("case_boxes.json exists, skipping", flush=True)
        return
    import numpy as np
    from esmean import _kernels, arith, bilinear

    entries = []
    for k in (8, 10, 12):
        v = w = 1 << k
        spec = bilinear.BoxSpec(V=v, W=w, theta=0.5)
        # independent direct total: full trial division in the oracle kernel
        lim = int(math.isqrt(spec.max_value)) + 1
        primes = arith.sieve_tables(lim, with_phi=False).primes
        tsum = np.zeros(1, np.uint64)
        t0 = time.time()
        _kernels.trial_d_chunk(w + 1, 2 * w + 1, v, primes, tsum,
                               np.zeros(0, np.uint32))
        direct = int(tsum[0])
        print(f"k={k}: trial direct={direct} ({time.time()-t0:.1f}s)",
              flush=True)
        for theta in (0.25, 0.5):
            box = bilinear.BoxSpec(V=v, W=w, theta=theta)
            rep = bilinear.case_contributions(box)
            assert rep.values["sum"] == direct, (k, theta, rep.values, direct)
            entries.append({
                "k": k, "theta": theta, "direct_sum": direct,
                "sums": {key: rep.values[f"sum_{key}"]
                         for key in ("rough", "small_smooth",
                                     "dense_smooth", "midrange")},
                "counts": {key: rep.values[f"count_{key}"]
                           for key in ("rough", "small_smooth",
                                       "dense_smooth", "midrange")},
            })
    _write("case_boxes.json", {"entries": entries})


def gen_weights(force: bool) -> None:
    if _have("meanvalue_pins.json", force):
        print("meanvalue_pins.json exists, skipping", flush=True)
        return
    x = 1000
    terms = []
    for a in range(1, x + 1):
        for l in range(1, x // a + 1):
            d = oracles.trial_divisor_count(4 * l * a * a + 1)
            m = 4 * a * l
            phi = m
            for p, _ in oracles.trial_factorize(m):
                phi -= phi // p
            terms.append(x * d / (phi * math.log(1.0 + x / (a * l))))
    direct = math.fsum(terms)
    _write("meanvalue_pins.json", {
        "weight_sum_x": x,
        "weight_sum_direct": direct,
        "n_terms": len(terms),
    })


def gen_band(force: bool) -> None:
    from esmean import bilinear

    for k in range(8, 17):
        name = f"band_k{k:02d}.json"
        if _have(name, force):
            print(f"{name} exists, skipping", flush=True)
            continue
        v = w = 1 << k
        t0 = time.time()
        rep = bilinear.bilinear_divisor_sum(bilinear.BoxSpec(V=v, W=w))
        dt = time.time() - t0
        _write(name, {
            "k": k, "V": v, "W": w,
            "sum": rep.values["sum"],
            "pairs": rep.values["pairs"],
            "ratio": rep.ratios["sum_over_vw_log4_2w"],
            "seconds": round(dt, 2),
        })
        print(f"k={k}: sum={rep.values['sum']} "
              f"ratio={rep.ratios['sum_over_vw_log4_2w']:.6f} ({dt:.1f}s)",
              flush=True)


STEPS = {
    "solutions": gen_solutions,
    "typesplit": gen_typesplit,
    "cases": gen_cases,
    "weights": gen_weights,
    "band": gen_band,
}


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("step", choices=[*STEPS, "all"])
    ap.add_argument("--force", action="store_true",
                    help="regenerate even if the fixture file exists")
    args = ap.parse_args()
    todo = list(STEPS) if args.step == "all" else [args.step]
    for name in todo:
        print(f"== {name} ==", flush=True)
        STEPS[name](args.force)
    return 0


if __name__ == "__main__":
    sys.exit(main())
