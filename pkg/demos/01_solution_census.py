"""A walk through the solution census for 4/n = 1/n1 + 1/n2 + 1/n3.

Run me from the repository root:

    python3 demos/01_solution_census.py

Everything here is exact integer arithmetic; no output depends on
floating point.
"""

from fractions import Fraction

import esmean as es

# ---------------------------------------------------------------------------
# Every canonical solution for a handful of small n.  "Canonical" means
# n1 <= n2 <= n3; each canonical triple stands for 6, 3, or 1 ordered
# triples depending on how many entries repeat.
# ---------------------------------------------------------------------------

for n in (2, 4, 5, 7, 24):
    ss = es.enumerate_solutions(n)
    print(f"n = {n}: {len(ss.canonical)} canonical, "
          f"{ss.ordered_count} ordered")
    for t in ss.canonical:
        check = Fraction(1, t.n1) + Fraction(1, t.n2) + Fraction(1, t.n3)
        assert check == Fraction(4, n)
        if n <= 7:  # n = 24 has 57 canonical triples; spare the scroll
            print(f"    ({t.n1}, {t.n2}, {t.n3})  x{t.permutation_weight()}")

# ---------------------------------------------------------------------------
# For prime p, a solution is Type I when exactly one denominator is a
# multiple of p and Type II when exactly two are.  A classical elementary
# argument shows every solution for a prime falls in one of these two
# buckets; the census lets us watch that hold.
# ---------------------------------------------------------------------------

print()
print(" p   f1   f2   total")
for p in (3, 5, 7, 11, 13, 101, 499):
    ts = es.type_split(p)
    assert ts.other == 0
    print(f"{p:>4} {ts.f1:>4} {ts.f2:>4} {ts.total:>6}")

# The p = 5 row reads f1 = 6, f2 = 6: twelve ordered solutions in all.

# ---------------------------------------------------------------------------
# The same classification is available per triple.
# ---------------------------------------------------------------------------

print()
t = es.SolutionTriple(2, 4, 20)
print(f"(2, 4, 20) for p = 5 is {es.classify(5, t).name}")
t = es.SolutionTriple(2, 5, 10)
print(f"(2, 5, 10) for p = 5 is {es.classify(5, t).name}")
