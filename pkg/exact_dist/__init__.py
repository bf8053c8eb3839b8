"""
Exact distributions package for ewens-ldp.

This package evaluates, in log domain, the discrete laws of an n-sample drawn
from a Poisson-Dirichlet or symmetric Dirichlet population: allelic
partitions, the number of alleles K_n and the age-class sizes.
"""

from exact_dist.allele_counts import (
    ageclass1_log_pmf,
    ageclass1_log_pmf_array,
    ageclass_joint_log_pmf,
    ageclass_joint_log_pmf_array,
    kn_log_mgf,
    kn_log_pmf,
    kn_log_pmf_row,
    kn_mean,
)
from exact_dist.logspace import LogReal, as_log_prob, log_rising_factorial, log_sum_exp
from exact_dist.partition import AllelePartition, enumerate_partitions
from exact_dist.sampling_formulas import (
    conditional_sampling_log_prob,
    dirichletK_log_pmf,
    esf_log_pmf,
    log_partition_factor,
    sample_partition_log_prob,
)
from exact_dist.stirling import stirling1_log_row

__all__ = [
    "AllelePartition",
    "LogReal",
    "ageclass1_log_pmf",
    "ageclass1_log_pmf_array",
    "ageclass_joint_log_pmf",
    "ageclass_joint_log_pmf_array",
    "as_log_prob",
    "conditional_sampling_log_prob",
    "dirichletK_log_pmf",
    "enumerate_partitions",
    "esf_log_pmf",
    "kn_log_mgf",
    "kn_log_pmf",
    "kn_log_pmf_row",
    "kn_mean",
    "log_partition_factor",
    "log_rising_factorial",
    "log_sum_exp",
    "sample_partition_log_prob",
    "stirling1_log_row",
]
