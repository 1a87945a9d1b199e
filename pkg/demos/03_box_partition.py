"""Dyadic boxes: exact divisor sums and the smooth/rough case partition.

The central object is the sum of d(4*l*a**2 + 1) over a box
V < l <= 2V, W < a <= 2W.  Each value n = 4*l*a**2 + 1 is split as
n = b * c -- the largest prefix b <= Z of its ascending prime powers
times the coprime remainder -- and the pair (l, a) is then filed into
one of four classes by where b and the least prime of c sit relative to
sqrt(Z) and T = log(W) * log(log(W)).

The sweep kernel does all of this in one pass with exact integers; the
point of this demo is to watch the partition tile the box.
"""

import esmean as es

# --- the split itself, on a few integers ------------------------------------

print("n = b * c splits at budget Z = 100:")
for n in (145, 625, 384, 97, 75_600):
    s = es.split_bc(n, 100.0)
    print(f"  {n:>6} = {s.b} * {s.c}   least prime of c: "
        f"{s.least_prime_of_c}")

# 384 shows the prefix rule: its full 2-power 128 exceeds the budget, so
# nothing at all lands in b even though 2 itself is tiny.

# --- a labeled box ----------------------------------------------------------

box = es.BoxSpec(V=256, W=256, theta=0.5)
rep = es.case_contributions(box)

print()
print(f"box V = W = 256, theta = 1/2  (Z = {box.z:.2f}, "
      f"sqrt(Z) = {box.sqrt_z:.2f}, T = {box.t_threshold:.2f})")
total = rep.values["sum"]
print(f"  total divisor sum: {total}")
for key in ("rough", "small_smooth", "dense_smooth", "midrange"):
    print(f"  {key:>13}: sum {rep.values['sum_' + key]:>7}, "
          f"pairs {rep.values['count_' + key]:>6}")

parts = sum(rep.values["sum_" + k]
            for k in ("rough", "small_smooth", "dense_smooth", "midrange"))
assert parts == total, "partition must tile the box exactly"

# At desk scale the thresholds collapse (T >= sqrt(Z), flagged below),
# which empties the midrange class; the partition identity holds anyway.
print(f"  degenerate thresholds: {bool(rep.params['degenerate'])}")

# --- the swapped-role variant ----------------------------------------------

# When the a-range is much shorter than the l-range the same machinery
# runs with the budget taken from V; the congruence per modulus becomes
# linear and contributes at most one root (see
# esmean.linear_root_count).  The summed values are identical.

wide = es.BoxSpec(V=1024, W=64, theta=0.25)
swapped = es.linear_branch_sum(wide)
direct = es.bilinear_divisor_sum(wide)
print()
print(f"swapped-role box V = 1024, W = 64: sum {swapped.values['sum']}"
      f" (direct recount: {direct.values['sum']})")
assert swapped.values["sum"] == direct.values["sum"]
print(f"budget source: {swapped.params['z_source']}"
      f" (Z = {swapped.params['z']:.3f})")
