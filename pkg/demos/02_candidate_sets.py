"""Where can the worst case hide?  Candidate sets versus a full scan.

Run with:  python3 demos/02_candidate_sets.py
"""
import time
from fractions import Fraction

from exactsize import ErrorCriterion, PopulationFrame, candidate_set, coverage
from exactsize.oracle import full_scan_min
from exactsize.sizing import frame_minimum

# --- 1. A small frame by hand ---
# For N = 10, n = 4 and eps = 1/10 only six values of M can hold the minimum
# coverage over [0, 10]: the two endpoints plus the points where the
# acceptance window jumps.
print("--- 1. A small frame by hand ---")
frame = PopulationFrame(10, 0, 10)
crit = ErrorCriterion.absolute(Fraction(1, 10))
cs = candidate_set(frame, 4, crit)
for M in cs.members:
    print(f"M={M:>2}  {cs.provenance[M]:<15} coverage={coverage(4, M, 10, crit)}")
print(f"{len(cs)} members, size bound {cs.bound} ({float(cs.bound):.1f})")

# --- 2. Same minimum, fewer evaluations ---
print("\n--- 2. Same minimum, fewer evaluations ---")
frame = PopulationFrame(200, 0, 200)
for n in (5, 30, 120):
    fm = frame_minimum(n, frame, crit)
    full = full_scan_min(n, frame, crit)
    print(f"n={n:>3}  candidates give M={fm.worst_M:>3} after {fm.evaluations:>3} evaluations; "
          f"full scan gives M={full[0]:>3} after 201; equal={fm.value == full[1]}")

# --- 3. A million units ---
# The number of candidates grows with n, not with N. At N = 10^6 and n = 500
# the exact minimum needs a few hundred coverage evaluations.
print("\n--- 3. A million units ---")
big = PopulationFrame(10**6, 0, 10**6)
eps = ErrorCriterion.absolute(Fraction(1, 100))
t0 = time.perf_counter()
fm = frame_minimum(500, big, eps)
print(f"worst M = {fm.worst_M}, evaluations = {fm.evaluations}, "
      f"min coverage ~ {float(fm.value):.10f}, {time.perf_counter() - t0:.2f} s")
