"""The smallest sample that guarantees a precision target.

Run with:  python3 demos/03_sample_size.py
"""
from fractions import Fraction

from exactsize import (
    ErrorCriterion,
    InfeasibleError,
    PopulationFrame,
    SizingRequest,
    minimum_sample_size,
    sizing_trace,
)

# --- 1. The basic question ---
# A population of 100. We know nothing about M, so the frame is [0, 100].
# How many units must we sample so that |k/n - M/N| < 1/10 holds with
# probability above 9/10, whatever M is?
print("--- 1. The basic question ---")
req = SizingRequest(PopulationFrame(100, 0, 100), ErrorCriterion.absolute(Fraction(1, 10)), Fraction(1, 10))
res = minimum_sample_size(req)
print(f"n_min = {res.n_min}, worst case at M = {res.worst_M}")
print(f"guaranteed coverage = {float(res.min_coverage):.12f}")

# --- 2. Prior knowledge shrinks the answer ---
# If we already know that M is at most 15, the worst case is much milder.
print("\n--- 2. Prior knowledge shrinks the answer ---")
for U in (100, 50, 30, 15):
    r = minimum_sample_size(SizingRequest(PopulationFrame(100, 0, U), req.criterion, req.delta))
    print(f"M in [0, {U:>3}]  ->  n_min = {r.n_min}")

# --- 3. Watching the search ---
# Ascending search visits every n from 2; the last entry is the answer.
print("\n--- 3. Watching the search ---")
small = SizingRequest(PopulationFrame(40, 0, 40), ErrorCriterion.absolute(Fraction(1, 5)), Fraction(1, 20))
for e in sizing_trace(small):
    print(f"n={e.n:>2}  worst M={e.worst_M:>2}  min coverage~{float(e.min_coverage):.4f}")

# --- 4. Accelerated search ---
# Doubling plus bisection reaches the same answer with fewer evaluations.
print("\n--- 4. Accelerated search ---")
fast = minimum_sample_size(SizingRequest(req.frame, req.criterion, req.delta, "accelerated"))
print(f"ascending:   n_min={res.n_min}, evaluations={res.coverage_evaluations}")
print(f"accelerated: n_min={fast.n_min}, evaluations={fast.coverage_evaluations}")

# --- 5. When no sample size can work ---
# A relative criterion cannot be met at M = 0, so a frame that includes 0
# is rejected up front.
print("\n--- 5. When no sample size can work ---")
try:
    minimum_sample_size(SizingRequest(PopulationFrame(100, 0, 100), ErrorCriterion.relative(Fraction(1, 10)), Fraction(1, 10)))
except InfeasibleError as exc:
    print(f"infeasible: {exc} (witness M = {exc.witness_M})")
