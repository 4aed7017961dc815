"""Exact coverage of a sample proportion drawn without replacement.

Run with:  python3 demos/01_coverage.py
"""
from fractions import Fraction

import numpy as np

from exactsize import ErrorCriterion, acceptance_window, coverage

# --- 1. One population, one sample size ---
# A population of N = 40 units contains M = 17 "successes". We draw n = 12
# without replacement and estimate M/N by k/n. The estimate is acceptable
# when |k/n - M/N| < 1/8.
print("--- 1. One population, one sample size ---")
N, M, n = 40, 17, 12
crit = ErrorCriterion.absolute(Fraction(1, 8))

# The accepted values of k form a contiguous window [g, h].
g, h = acceptance_window(n, M, N, crit)
print(f"accepted sample counts: k in [{g}, {h}]")

# Coverage is the hypergeometric probability of landing in that window.
# It is an exact fraction; the decimal is only for reading.
c = coverage(n, M, N, crit)
print(f"coverage = {c}")
print(f"         ~ {float(c):.12f}")

# --- 2. Coverage as a function of M ---
# Under the absolute criterion the curve is symmetric about N/2. It is not
# smooth: it jumps wherever the window gains or loses a value of k, so the
# lowest point need not be at N/2 and can fall between the printed rows.
print("\n--- 2. Coverage as a function of M ---")
curve = np.array([float(coverage(n, m, N, crit)) for m in range(N + 1)])
for m in range(0, N + 1, 4):
    bar = "#" * int(round(curve[m] * 50))
    print(f"M={m:>2}  {curve[m]:.4f}  {bar}")
print(f"symmetric: {np.allclose(curve, curve[::-1])}")
print(f"lowest at M = {int(np.argmin(curve))}: {curve.min():.6f}")

# --- 3. Relative error ---
# The relative criterion |k/n - M/N| < eps * M/N gets stricter as M shrinks.
# At M = 0 nothing is accepted, so coverage is exactly 0.
print("\n--- 3. Relative error ---")
rel = ErrorCriterion.relative(Fraction(1, 4))
for m in (0, 2, 8, 20, 35):
    print(f"M={m:>2}  window={tuple(acceptance_window(n, m, N, rel))}  coverage~{float(coverage(n, m, N, rel)):.6f}")
