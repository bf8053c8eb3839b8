"""
Simplex geometry package for ewens-ldp.

Exact order-statistic densities of the uniform distribution on the
K-simplex, built on exact Irwin-Hall probabilities.
"""

from simplex_geom.irwin_hall import irwin_hall_cdf, irwin_hall_log_cdf_difference
from simplex_geom.order_stats import (
    OrderStatPoint,
    SandwichReport,
    order_stat_log_density,
    sandwich_check,
    volume_L,
)

__all__ = [
    "OrderStatPoint",
    "SandwichReport",
    "irwin_hall_cdf",
    "irwin_hall_log_cdf_difference",
    "order_stat_log_density",
    "sandwich_check",
    "volume_L",
]
