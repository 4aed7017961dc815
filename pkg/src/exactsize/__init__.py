"""Exact minimum sample size for estimating a finite-population proportion.

Sampling ``n`` of ``N`` units without replacement, the estimate ``k/n`` of
``M/N`` must meet an absolute, relative or mixed margin of error with
probability above ``1 - delta`` for every ``M`` in a known interval
``[L, U]``. Coverage is evaluated exactly, and only at a candidate set of M
values whose size does not grow with ``N``.
"""

from .candidates import (
    CandidateSet,
    MixedPreconditionError,
    candidate_set,
    candidate_set_absolute,
    candidate_set_mixed,
    candidate_set_relative,
    reflect_frame,
)
from .combinatorics import HyperParams, S, T, binom, hyper_pmf
from .coverage import (
    AcceptanceWindow,
    ErrorCriterion,
    PopulationFrame,
    acceptance_window,
    coverage,
    mixed_piecewise_check,
)
from .rational import parse_ratio
from .sizing import (
    InfeasibleError,
    SampleSizeResult,
    SizingRequest,
    UnreachableError,
    min_coverage_over_frame,
    minimum_sample_size,
    sizing_trace,
)

__version__ = "0.1.0"
