"""
Verification lab package for ewens-ldp.

Scaling regimes, exact event probabilities, empirical rate curves with
extrapolation, cumulant-limit and law-of-large-numbers tables, sampler
goodness-of-fit and the named verification suites built from them.
"""

from ldp_lab.curves import (
    delta_sensitivity,
    dirichlet_rate_curve,
    geometric_grid,
    lln_table,
    mgf_limit_curve,
    rate_curve,
    remainder_bound,
)
from ldp_lab.events import EventSpec, event_log_prob, gem_log_density
from ldp_lab.gof import GofReport, consistency_ewens_kn, gof_validate
from ldp_lab.regime import ScalingRegime, speed
from ldp_lab.suites import SUITES, SuiteResult, get_suite, run_all, run_suite
from ldp_lab.tables import ConvergenceTable, ResultTable

__all__ = [
    "SUITES",
    "ConvergenceTable",
    "EventSpec",
    "GofReport",
    "ResultTable",
    "ScalingRegime",
    "SuiteResult",
    "consistency_ewens_kn",
    "delta_sensitivity",
    "dirichlet_rate_curve",
    "event_log_prob",
    "gem_log_density",
    "geometric_grid",
    "get_suite",
    "gof_validate",
    "lln_table",
    "mgf_limit_curve",
    "rate_curve",
    "remainder_bound",
    "run_all",
    "run_suite",
    "speed",
]
