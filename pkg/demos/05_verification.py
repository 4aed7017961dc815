"""Checking the fast path: identities, full scans and simulation.

Run with:  python3 demos/05_verification.py
"""
from fractions import Fraction

import numpy as np

from exactsize import ErrorCriterion, S, T, coverage
from exactsize.oracle import GridSpec, check_candidate_sweep, check_lemma_suite, monte_carlo_coverage

# --- 1. A difference identity ---
# Moving one unit from "failure" to "success" changes a lower tail by a
# single closed-form term.
print("--- 1. A difference identity ---")
lhs = S(4, 0, 1, 2, 8) - S(4, 0, 1, 3, 8)
print(f"S(4,0,1,2,8) - S(4,0,1,3,8) = {lhs}")
print(f"T(1,2,8,4)                  = {T(1, 2, 8, 4)}")

# --- 2. Exhaustive identity checks for small N ---
rep = check_lemma_suite(10)
print(f"\n--- 2. Identity suite up to N = 10 ---\n{rep.instances_checked} checks, {len(rep.failures)} failures")

# --- 3. Candidate minimum against a full scan ---
rep = check_candidate_sweep(GridSpec(N_range=(2, 20), seed=1), "absolute")
print(f"\n--- 3. Candidate sweep, N <= 20 ---\n{rep.instances_checked} records, {len(rep.failures)} failures")

# --- 4. Simulation ---
# Draw 200000 samples without replacement and count how often the estimate
# lands inside the tolerance. The exact coverage should sit within a few
# standard errors of the simulated rate.
print("\n--- 4. Simulation ---")
crit = ErrorCriterion.absolute(Fraction(1, 8))
est, se = monte_carlo_coverage(12, 17, 40, crit, 200_000, seed=2024)
exact = coverage(12, 17, 40, crit)
z = float((est - exact) / se)
print(f"simulated {float(est):.5f} +/- {float(se):.5f}, exact {float(exact):.5f}, z = {z:+.2f}")

zs = []
for seed in range(20):
    e, s = monte_carlo_coverage(12, 17, 40, crit, 20_000, seed=seed)
    zs.append(float((e - exact) / s))
zs = np.array(zs)
print(f"20 seeds at 20000 trials: mean z = {zs.mean():+.2f}, sd z = {zs.std(ddof=1):.2f}")
