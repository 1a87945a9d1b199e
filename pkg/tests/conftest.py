"""Shared fixtures and the acceptance summary hook.

The expensive computations (the per-prime split table below 1e5 and the
dyadic sweep band) are session-scoped so the gate checks and the
worker-count invariance checks share one run instead of repeating it.
Each heavy fixture records its wall-clock time for the runtime checks.
"""

from __future__ import annotations

import json
import os
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

FIXDIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "fixtures")


def load_fixture(name: str):
    with open(os.path.join(FIXDIR, name), "r", encoding="utf-8") as fh:
        return json.load(fh)


@pytest.fixture(scope="session")
def tables100k():
    from esmean import arith
    return arith.sieve_tables(100_000)


@pytest.fixture(scope="session")
def split100k(tables100k):
    """(ps, f1, f2, seconds) for all primes below 1e5, computed once."""
    from esmean import meanvalue
    t0 = time.time()
    ps, f1, f2 = meanvalue.split_table(100_000, tables=tables100k, workers=4)
    return ps, f1, f2, time.time() - t0


@pytest.fixture(scope="session")
def band4():
    """Envelope-band sweep V=W=2^k, k=8..16, at 4 workers.

    Returns ({k: SumReport}, seconds).  This is the long fixture: the
    k=16 box alone sieves 2^32 pairs.
    """
    import esmean as es
    t0 = time.time()
    reps = {k: es.bilinear_divisor_sum(es.BoxSpec(V=1 << k, W=1 << k),
                                       workers=4)
            for k in range(8, 17)}
    return reps, time.time() - t0


@pytest.fixture(scope="session")
def case_reports():
    """case_contributions at workers=1 for the six partition boxes."""
    import esmean as es
    out = {}
    for k in (8, 10, 12):
        for theta in (0.25, 0.5):
            box = es.BoxSpec(V=1 << k, W=1 << k, theta=theta)
            out[(k, theta)] = es.case_contributions(box, workers=1)
    return out


# ---------------------------------------------------------------------------
# acceptance summary: one PASS/FAIL line per gate check, in file order
# ---------------------------------------------------------------------------

_GATE_RESULTS = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when != "call":
        return
    mod = getattr(item, "module", None)
    if mod is not None and getattr(mod, "__name__", "") == "test_acceptance":
        _GATE_RESULTS.append((item, rep))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _GATE_RESULTS:
        return
    terminalreporter.section("acceptance gate")
    for item, rep in _GATE_RESULTS:
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        if rep.passed:
            word = "PASS"
        elif rep.skipped:
            word = "SKIP"
        else:
            word = "FAIL"
        terminalreporter.write_line(f"[{word}] {doc}")
