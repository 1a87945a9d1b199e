#!/usr/bin/env python3
# Counting roots of 4*l*x^2 + 1 = 0 (mod n).
#
# The count G(l, n) is multiplicative in n and never exceeds the divisor
# count d(n) -- two facts this script demonstrates numerically before
# they get used to control divisor sums in demo 03.

import numpy as np

import esmean as es


def brute(l: int, n: int) -> int:
    x = np.arange(n, dtype=np.int64)
    return int((((4 * l % n) * ((x * x) % n) + 1) % n == 0).sum())


# --- agreement with direct enumeration -------------------------------------

print("G(l, n) vs direct enumeration, n <= 300, l in {1, 2, 3}:")
worst = 0
for n in range(1, 301):
    for l in (1, 2, 3):
        g = es.quad_root_count(l, n)
        assert g == brute(l, n), (l, n)
        worst = max(worst, g)
print(f"  all agree; largest count seen: {worst}")

# --- multiplicativity -------------------------------------------------------

print()
print("multiplicativity on coprime factors:")
for l, m, n in ((1, 13, 5), (3, 65, 77), (7, 9, 26)):
    lhs = es.quad_root_count(l, m * n)
    rhs = es.quad_root_count(l, m) * es.quad_root_count(l, n)
    print(f"  G({l}, {m}*{n}) = {lhs} = {es.quad_root_count(l, m)}"
          f" * {es.quad_root_count(l, n)}")
    assert lhs == rhs

# --- the divisor-count ceiling ----------------------------------------------

print()
tables = es.sieve_tables(100_000)
ratio_one = 0
for n in range(1, 100_001):
    g = es.quad_root_count(1, n)
    d = int(tables.divisor_count[n])
    assert g <= d
    if g == d:
        ratio_one += 1
print(f"G(1, n) <= d(n) for every n <= 1e5; equality at {ratio_one} values")

# Equality needs every prime factor of n to split the quadratic, so it
# thins out quickly: G picks up a factor 2 per prime exactly when d does,
# but G collapses to 0 whenever a single bad prime appears.

# --- prime powers add nothing ----------------------------------------------

print()
print("G on prime powers (l = 1):")
for p in (5, 13, 29):
    row = [es.quad_root_count(1, p**e) for e in range(1, 5)]
    print(f"  p = {p}: {row}")
    assert len(set(row)) == 1

# A root mod p is simple (its derivative 8*l*x is a unit), so Hensel's
# lemma lifts it uniquely up every power: the count is flat in e.
