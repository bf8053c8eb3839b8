"""
Samplers package for ewens-ldp.

Seeded generators for GEM sticks, Poisson-Dirichlet atoms, symmetric
Dirichlet vectors and their size-biased permutation, Ewens partitions and the
number of alleles K_n.
"""

from samplers.dirichlet import (
    sample_dirichlet_batch,
    sample_dirichlet_symmetric,
    sample_size_biased_dirichlet,
    sample_size_biased_dirichlet_batch,
)
from samplers.mass import MassOrder, MassVector
from samplers.partitions import sample_ewens_batch, sample_ewens_partition, sample_kn, sample_kn_batch
from samplers.seeding import SeedSpec
from samplers.sticks import sample_gem, sample_gem_batch, sample_gem_until, sample_pd

__all__ = [
    "MassOrder",
    "MassVector",
    "SeedSpec",
    "sample_dirichlet_batch",
    "sample_dirichlet_symmetric",
    "sample_ewens_batch",
    "sample_ewens_partition",
    "sample_gem",
    "sample_gem_batch",
    "sample_gem_until",
    "sample_kn",
    "sample_kn_batch",
    "sample_pd",
    "sample_size_biased_dirichlet",
    "sample_size_biased_dirichlet_batch",
]
