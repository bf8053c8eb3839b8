"""
Rates package for ewens-ldp.

Closed-form rate functions, cumulant limits and the Legendre transform used
to compare exact probabilities with their large-deviation asymptotics.
"""

from rates.basic import constrained_inf_relent, rate_esf, rate_relative_entropy, rate_residual_mass
from rates.finite_allele import SKForm, rate_beta_stick, rate_sizebiased_prefix, rate_sizebiased_SK
from rates.regimes import (
    cgf_limit,
    legendre_caseC,
    legendre_dual_point,
    rate_ageclass_c,
    rate_ageclass_regime,
    rate_kn_regime,
)

__all__ = [
    "SKForm",
    "cgf_limit",
    "constrained_inf_relent",
    "legendre_caseC",
    "legendre_dual_point",
    "rate_ageclass_c",
    "rate_ageclass_regime",
    "rate_beta_stick",
    "rate_esf",
    "rate_kn_regime",
    "rate_relative_entropy",
    "rate_residual_mass",
    "rate_sizebiased_SK",
    "rate_sizebiased_prefix",
]
