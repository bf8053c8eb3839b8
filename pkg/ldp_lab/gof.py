"""Chi-square goodness-of-fit of the samplers against the exact laws."""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import numpy as np
from scipy.integrate import dblquad, quad
from scipy.stats import chi2_contingency, chisquare

from constants import GOF_MIN_EXPECTED, GOF_SIGNIFICANCE, GofKind
from errors import UsageError
from exact_dist import enumerate_partitions, esf_log_pmf, kn_log_pmf_row
from ldp_lab.events import gem_log_density
from ldp_lab.tables import ResultTable
from samplers import SeedSpec, sample_dirichlet_batch, sample_gem_batch, sample_kn_batch
from samplers.partitions import sample_ewens_counts
from simplex_geom import OrderStatPoint, order_stat_log_density

logger = logging.getLogger(__name__)

_GEM_V1_CELLS = 5
_GEM_V2_CELLS = 4
_MAX_BINS = 10

DEFAULT_PARAMS = {
    GofKind.Ewens: {"theta": 2.0, "n": 6, "N": 200_000},
    GofKind.Kn: {"theta": 1.0, "n": 3, "N": 200_000},
    GofKind.GEM: {"theta": 3.0, "n": 2, "N": 100_000},
    GofKind.DirichletMax: {"K": 3, "alpha": 1.0, "N": 100_000},
}


@dataclass
class GofReport:
    """Outcome of one chi-square test."""

    kind: str
    statistic: float
    dof: int
    p_value: float
    N: int
    params: Dict[str, Any] = field(default_factory=dict)
    seed: Dict[str, int] = field(default_factory=dict)
    significance: float = GOF_SIGNIFICANCE

    @property
    def passed(self) -> bool:
        return self.p_value > self.significance

    def to_result_table(self) -> ResultTable:
        table = ResultTable(["kind", "statistic", "dof", "p_value", "passed"])
        table.add_row(self.kind, self.statistic, self.dof, self.p_value, self.passed)
        table.meta.update({"N": self.N, "params": dict(self.params), "seed": dict(self.seed),
                           "significance": self.significance})
        return table


def _chi_square(kind: str, observed: np.ndarray, probs: np.ndarray, N: int, params: dict,
                seed: SeedSpec) -> GofReport:
    expected = N * probs / probs.sum()
    if expected.min() < GOF_MIN_EXPECTED:
        raise UsageError(f"smallest expected cell count is {expected.min():.3g} < {GOF_MIN_EXPECTED}; "
                         f"increase N", key="N")
    statistic, p_value = chisquare(observed, expected)
    report = GofReport(kind, float(statistic), len(observed) - 1, float(p_value), N, params, seed.as_dict())
    logger.info("%s goodness of fit: chi2=%.4g dof=%d p=%.4g", kind, report.statistic, report.dof, report.p_value)
    return report


def _ewens(params: dict, N: int, seed: SeedSpec) -> GofReport:
    theta, n = float(params["theta"]), int(params["n"])
    partitions = enumerate_partitions(n)
    index = {p.counts: i for i, p in enumerate(partitions)}
    probs = np.exp([esf_log_pmf(theta, p) for p in partitions])
    observed = np.zeros(len(partitions))
    rows, hits = np.unique(sample_ewens_counts(theta, n, N, seed), axis=0, return_counts=True)
    for row, hit in zip(rows, hits):
        observed[index[tuple(int(c) for c in row)]] = hit
    return _chi_square(GofKind.Ewens, observed, probs, N, {"theta": theta, "n": n}, seed)


def _kn(params: dict, N: int, seed: SeedSpec) -> GofReport:
    theta, n = float(params["theta"]), int(params["n"])
    probs = np.exp(kn_log_pmf_row(theta, n))
    observed = np.bincount(sample_kn_batch(theta, n, N, seed) - 1, minlength=n).astype(float)
    return _chi_square(GofKind.Kn, observed, probs, N, {"theta": theta, "n": n}, seed)


def _beta_quantiles(theta: float, cells: int) -> np.ndarray:
    """Edges splitting Beta(1, theta) into cells of equal mass."""
    q = np.linspace(0.0, 1.0, cells + 1)
    return np.append(-np.expm1(np.log1p(-q[:-1]) / theta), 1.0)


def gem_cell_masses(theta: float) -> np.ndarray:
    """
    Masses of the (v1, v2) stick-fraction grid under the GEM density.

    x1 = v1 and x2 = v2 (1 - v1), so each cell integrates the density of the
    first two atoms times the Jacobian 1 - v1.
    """
    v1_edges = _beta_quantiles(theta, _GEM_V1_CELLS)
    v2_edges = _beta_quantiles(theta, _GEM_V2_CELLS)

    def integrand(v2, v1):
        return math.exp(gem_log_density(theta, (v1, v2 * (1.0 - v1)))) * (1.0 - v1)

    masses = np.empty(_GEM_V1_CELLS * _GEM_V2_CELLS)
    for i in range(_GEM_V1_CELLS):
        for j in range(_GEM_V2_CELLS):
            masses[i * _GEM_V2_CELLS + j] = dblquad(integrand, v1_edges[i], v1_edges[i + 1],
                                                    v2_edges[j], v2_edges[j + 1])[0]
    return masses


def _gem(params: dict, N: int, seed: SeedSpec) -> GofReport:
    theta = float(params["theta"])
    if int(params.get("n", 2)) != 2:
        raise UsageError("the GEM density test bins the first two atoms; use n=2", key="n")
    atoms = sample_gem_batch(theta, 2, N, seed)
    v1 = atoms[:, 0]
    v2 = atoms[:, 1] / (1.0 - v1)
    rows = np.digitize(v1, _beta_quantiles(theta, _GEM_V1_CELLS)[1:-1])
    cols = np.digitize(v2, _beta_quantiles(theta, _GEM_V2_CELLS)[1:-1])
    observed = np.bincount(rows * _GEM_V2_CELLS + cols, minlength=_GEM_V1_CELLS * _GEM_V2_CELLS)
    return _chi_square(GofKind.GEM, observed.astype(float), gem_cell_masses(theta), N,
                       {"theta": theta, "n": 2}, seed)


def _dirichlet_max(params: dict, N: int, seed: SeedSpec) -> GofReport:
    K = int(params["K"])
    alpha = float(params.get("alpha", 1.0))
    if alpha != 1.0:
        raise UsageError("the largest-coordinate law is exact only for alpha=1", key="alpha")
    edges = np.linspace(1.0 / K, 1.0, _MAX_BINS + 1)

    def density(p):
        return math.exp(order_stat_log_density(OrderStatPoint((p,), K)))

    kinks = [1.0 / j for j in range(2, K)]
    probs = np.array([quad(density, lo, hi, points=[k for k in kinks if lo < k < hi] or None)[0]
                      for lo, hi in zip(edges[:-1], edges[1:])])
    largest = sample_dirichlet_batch(K, alpha, N, seed).max(axis=1)
    observed = np.bincount(np.clip(np.digitize(largest, edges[1:-1]), 0, _MAX_BINS - 1),
                           minlength=_MAX_BINS)
    return _chi_square(GofKind.DirichletMax, observed.astype(float), probs, N, {"K": K, "alpha": alpha}, seed)


_TESTS = {
    GofKind.Ewens: _ewens,
    GofKind.Kn: _kn,
    GofKind.GEM: _gem,
    GofKind.DirichletMax: _dirichlet_max,
}


def gof_validate(which: GofKind, params: Optional[dict] = None, N: Optional[int] = None,
                 seed: Optional[SeedSpec] = None) -> GofReport:
    """
    Chi-square test of a sampler against its exact law.

    Args:
        which: ewens, kn, gem or dirichlet-max.
        params: Law parameters; missing keys take the defaults for ``which``.
        N: Number of draws.
        seed: Stream of the draws.

    Raises:
        UsageError: If an expected cell count is below GOF_MIN_EXPECTED.
    """
    which = GofKind(which)
    merged = {**DEFAULT_PARAMS[which], **(params or {})}
    N = int(N if N is not None else merged.pop("N"))
    merged.pop("N", None)
    return _TESTS[which](merged, N, seed or SeedSpec())


def consistency_ewens_kn(theta: float, n: int, N: int, seed: Optional[SeedSpec] = None) -> GofReport:
    """
    Two-sample chi-square of the block count from the partition sampler
    against the direct K_n sampler.

    Levels are pooled left to right until every expected cell reaches
    GOF_MIN_EXPECTED.
    """
    seed = seed or SeedSpec()
    from_partitions = sample_ewens_counts(theta, n, N, seed).sum(axis=1)
    direct = sample_kn_batch(theta, n, N, seed.child(1))
    table = np.vstack((np.bincount(from_partitions - 1, minlength=n),
                       np.bincount(direct - 1, minlength=n)))

    pooled, current = [], np.zeros(2)
    for column in table.T:
        current = current + column
        if current.sum() >= 2 * GOF_MIN_EXPECTED:
            pooled.append(current)
            current = np.zeros(2)
    if current.sum() > 0:
        if not pooled:
            raise UsageError("too few draws for a two-sample test", key="N")
        pooled[-1] = pooled[-1] + current
    if len(pooled) < 2:
        raise UsageError("the block count takes a single value at these parameters", key="n")

    statistic, p_value, dof, _ = chi2_contingency(np.array(pooled).T, correction=False)
    return GofReport("ewens-kn", float(statistic), int(dof), float(p_value), N,
                     {"theta": theta, "n": n}, seed.as_dict())
