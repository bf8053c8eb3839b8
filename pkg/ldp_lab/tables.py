"""Tabular results shared by the lab and the emitters."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np


@dataclass
class ResultTable:
    """
    Column names, rows of values and a metadata block.

    Attributes:
        columns: Column names, in output order.
        rows: One list of values per row, aligned with ``columns``.
        meta: Seed, parameters and anything else needed to reproduce the table.
    """

    columns: List[str]
    rows: List[List[Any]] = field(default_factory=list)
    meta: Dict[str, Any] = field(default_factory=dict)

    def add_row(self, *values):
        if len(values) != len(self.columns):
            raise ValueError(f"row has {len(values)} values for {len(self.columns)} columns")
        self.rows.append([plain(v) for v in values])

    def column(self, name: str) -> List[Any]:
        index = self.columns.index(name)
        return [row[index] for row in self.rows]

    def records(self) -> List[Dict[str, Any]]:
        return [dict(zip(self.columns, row)) for row in self.rows]


@dataclass
class ConvergenceTable:
    """
    Empirical rates along a theta grid and their extrapolated limit.

    Attributes:
        thetas: Grid, increasing.
        sizes: Sample size n used at each theta.
        speeds: Speed at each theta.
        log_probs: Exact log-probability at each theta.
        empirical: -log_prob / speed.
        target: Closed-form rate.
        extrapolated: Intercept of the fit empirical = r + C / speed.
        slope: The fitted C.
        residual_ratio: RMS fit residual over RMS of the C / speed term.
        residual_ok: Whether that ratio is within the accepted bound.
    """

    thetas: List[float]
    sizes: List[int]
    speeds: List[float]
    log_probs: List[float]
    empirical: List[float]
    target: float
    extrapolated: float
    slope: float
    residual_ratio: float
    residual_ok: bool
    meta: Dict[str, Any] = field(default_factory=dict)

    @property
    def error(self) -> float:
        return abs(self.extrapolated - self.target)

    def passed(self, tolerance: float) -> bool:
        return self.residual_ok and self.error <= tolerance

    def to_result_table(self, extra_meta: Optional[Dict[str, Any]] = None) -> ResultTable:
        table = ResultTable(["theta", "n", "speed", "log_prob", "empirical_rate"])
        for row in zip(self.thetas, self.sizes, self.speeds, self.log_probs, self.empirical):
            table.add_row(*row)
        table.meta.update(self.meta)
        table.meta.update({
            "target_rate": self.target,
            "extrapolated_rate": self.extrapolated,
            "slope": self.slope,
            "residual_ratio": self.residual_ratio,
            "residual_ok": self.residual_ok,
        })
        if extra_meta:
            table.meta.update(extra_meta)
        return table


def plain(value: Any) -> Any:
    """Convert numpy scalars and arrays to built-in Python values."""
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    return value
