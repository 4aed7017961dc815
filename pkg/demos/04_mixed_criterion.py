"""Mixed error criterion: absolute for small M, relative for large M.

Run with:  python3 demos/04_mixed_criterion.py
"""
from fractions import Fraction

from exactsize import (
    ErrorCriterion,
    MixedPreconditionError,
    PopulationFrame,
    SizingRequest,
    candidate_set,
    candidate_set_mixed,
    coverage,
    minimum_sample_size,
)

# --- 1. The breakpoint ---
# An estimate is accepted if it is within eps_a absolutely OR within eps_r
# relatively. Below B = floor(N eps_a / eps_r) the absolute tolerance is the
# wider one; above it the relative tolerance is.
print("--- 1. The breakpoint ---")
N = 60
crit = ErrorCriterion.mixed(Fraction(1, 20), Fraction(1, 4))
B = crit.breakpoint(N)
print(f"B = {B}")
for M in (B - 1, B, B + 1, B + 2):
    print(f"M={M:>2} uses the {crit.branch(M, N).kind} branch")

# --- 2. Mixed coverage is at least each pure coverage ---
print("\n--- 2. Mixed coverage dominates ---")
a, r = ErrorCriterion.absolute(crit.eps_a), ErrorCriterion.relative(crit.eps_r)
for M in (3, 12, 30, 50):
    vals = [float(coverage(15, M, N, c)) for c in (a, r, crit)]
    print(f"M={M:>2}  absolute~{vals[0]:.4f}  relative~{vals[1]:.4f}  mixed~{vals[2]:.4f}")

# --- 3. Candidate set around the breakpoint ---
print("\n--- 3. Candidate set around the breakpoint ---")
frame = PopulationFrame(N, 2, 55)
cs = candidate_set_mixed(frame, 15, crit.eps_a, crit.eps_r)
print(", ".join(f"{M}:{cs.provenance[M][0]}" for M in cs.members))
print("(e = endpoint, b = breakpoint, f = floor family, c = ceiling family)")

# --- 4. Breakpoint outside the frame ---
# When B falls outside (L, U) one branch covers the whole frame. The strict
# constructor refuses; candidate_set() substitutes the pure set and says so.
print("\n--- 4. Breakpoint outside the frame ---")
narrow = PopulationFrame(N, 30, 55)
try:
    candidate_set_mixed(narrow, 15, crit.eps_a, crit.eps_r)
except MixedPreconditionError as exc:
    print(f"refused: {exc}")
print(f"substituted: {candidate_set(narrow, 15, crit).note}")

# --- 5. Sizing ---
print("\n--- 5. Sizing ---")
res = minimum_sample_size(SizingRequest(frame, crit, Fraction(1, 10)))
print(f"n_min = {res.n_min}, worst M = {res.worst_M}, coverage~{float(res.min_coverage):.6f}")
