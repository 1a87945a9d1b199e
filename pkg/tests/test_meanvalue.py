"""Prime mean values, the weight sum, and the closing majorant chain."""

import math

import pytest

import esmean as es
from esmean import meanvalue
from esmean.errors import DomainError

from conftest import load_fixture


PINNED_ROWS = {2: (0, 3), 3: (9, 3), 5: (6, 6), 7: (27, 9),
               11: (33, 15), 13: (18, 6)}


def test_split_table_small_rows():
    ps, f1, f2 = meanvalue.split_table(100)
    assert ps[0] == 2
    rows = {int(p): (int(a), int(b)) for p, a, b in zip(ps, f1, f2)}
    for p, want in PINNED_ROWS.items():
        assert rows[p] == want


def test_split_table_matches_oracle_fixture():
    fx = load_fixture("typesplit_small.json")
    ps, f1, f2 = meanvalue.split_table(1000)
    want = {r[0]: (r[1], r[2]) for r in fx["rows"]}
    assert len(ps) == len(want)
    for p, a, b in zip(ps, f1, f2):
        assert want[int(p)] == (int(a), int(b))
    assert int(f1.sum()) == fx["sum_f1_below_1000"] == 30177
    assert int(f2.sum()) == fx["sum_f2_below_1000"] == 11694
    assert es.sum_f1(1000) == 30177
    assert es.sum_f2(1000) == 11694


def test_split_table_domain():
    with pytest.raises(DomainError):
        meanvalue.split_table(2)


def test_envelope_values():
    env = es.envelope_values(1000)
    lx = math.log(1000.0)
    llx = math.log(lx)
    assert env["x_log2x"] == 1000 * lx**2
    assert env["x_log5x_loglog2x"] == 1000 * lx**5 * llx**2
    assert env["x_log2x_loglogx"] == 1000 * lx**2 * llx
    assert env["x_exp_logx_over_loglogx"] == 1000 * math.exp(lx / llx)
    assert all(v > 0 for v in env.values())


def test_mean_value_report_consistency():
    rep = es.mean_value_report(1000, precomputed=(30177, 11694))
    assert rep.sum_f1 == 30177 and rep.sum_f2 == 11694
    env = es.envelope_values(1000)
    assert rep.ratios["f1_over_x_log5x_loglog2x"] \
        == 30177 / env["x_log5x_loglog2x"]
    assert rep.ratios["f2_over_x_log2x"] == 11694 / env["x_log2x"]
    # the precomputed shortcut must agree with the recomputing path
    full = es.mean_value_report(200)
    ps, f1, f2 = meanvalue.split_table(200)
    again = es.mean_value_report(200, precomputed=(int(f1.sum()),
                                                   int(f2.sum())))
    assert full == again


def test_weight_sum_matches_pure_python_fixture():
    fx = load_fixture("meanvalue_pins.json")
    assert fx["weight_sum_x"] == 1000
    rep = es.reduction_weight_sum(1000)
    # same multiset of exactly-computed float terms, fsum both sides
    assert rep.direct_value == fx["weight_sum_direct"]
    assert abs(rep.dyadic_value - rep.direct_value) \
        <= 1e-12 * rep.direct_value
    assert sum(1000 // a for a in range(1, 1001)) == fx["n_terms"]


def test_weight_sum_block_table_shape():
    x = 64
    rep = es.reduction_weight_sum(x)
    lg2x = math.log2(x)
    seen = set()
    for i, j, bsum, w in rep.block_table:
        assert w == 1.0 / (1.0 + lg2x - i - j)
        assert bsum > 0
        seen.add((i, j))
    assert (-1, -1) in seen            # the (a, l) = (1, 1) cell
    assert (-1, 5) in seen and (5, -1) in seen    # a or l = 1 edges
    assert max(i for i, _ in seen) == 5
    assert all(i + j <= 6 for i, j in seen)


def test_weight_sum_domain():
    with pytest.raises(DomainError):
        es.reduction_weight_sum(15)


@pytest.mark.parametrize("k", [4, 10, 20])
def test_final_chain_at_powers_of_two(k):
    rep = es.final_chain(2**k)
    v = rep.values
    assert v["line1_block_weights"] == v["line2_harmonic"]
    assert v["line2_harmonic"] <= v["line3_log_majorant"] \
        <= v["line4_closed_form"]
    assert v["line4_closed_form"] == (k + 1) * math.log2(k + 2)
    assert all(r >= 1.0 for r in rep.ratios.values())


def test_final_chain_between_powers_of_two():
    rep = es.final_chain(3000)            # floor(log2 x) = 11
    v = rep.values
    assert rep.params["k"] == 11
    assert v["line1_block_weights"] < v["line2_harmonic"]
    assert v["line2_harmonic"] <= v["line3_log_majorant"] \
        <= v["line4_closed_form"]


def test_final_chain_domain():
    with pytest.raises(DomainError):
        es.final_chain(15)
