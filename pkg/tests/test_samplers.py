"""Tests for the samplers package."""

import math

import numpy as np
import pytest

from errors import DomainError
from exact_dist import AllelePartition, kn_mean
from samplers import (
    MassOrder,
    MassVector,
    SeedSpec,
    sample_dirichlet_batch,
    sample_dirichlet_symmetric,
    sample_ewens_batch,
    sample_ewens_partition,
    sample_gem,
    sample_gem_batch,
    sample_gem_until,
    sample_kn,
    sample_kn_batch,
    sample_pd,
    sample_size_biased_dirichlet,
    sample_size_biased_dirichlet_batch,
)

SEED = SeedSpec(1234, 0)


def within_stderr(samples, expected, k=4.0):
    samples = np.asarray(samples, dtype=float)
    stderr = samples.std(ddof=1) / math.sqrt(samples.size)
    return abs(samples.mean() - expected) <= k * stderr


class TestSeedSpec:
    """Tests for SeedSpec."""

    def test_same_spec_same_draws(self):
        """Test that a spec always yields the same stream."""
        assert np.array_equal(SEED.generator().random(5), SEED.generator().random(5))

    def test_streams_differ(self):
        """Test that sibling streams differ."""
        assert not np.array_equal(SEED.generator().random(5), SEED.child(1).generator().random(5))

    def test_invalid(self):
        """Test the seed range checks."""
        with pytest.raises(DomainError):
            SeedSpec(-1, 0)
        with pytest.raises(DomainError):
            SeedSpec(1, -2)


class TestMassVector:
    """Tests for MassVector."""

    def test_over_unit_mass(self):
        """Test that total mass above one is rejected."""
        with pytest.raises(DomainError):
            MassVector([0.7, 0.4])

    def test_descending_order_checked(self):
        """Test that a descending vector must be non-increasing."""
        with pytest.raises(DomainError):
            MassVector([0.1, 0.2], MassOrder.Descending)

    def test_descending_view(self):
        """Test ranking a stick-ordered vector."""
        ranked = MassVector([0.1, 0.5, 0.2], tail_bound=0.2).descending()
        assert list(ranked.atoms) == [0.5, 0.2, 0.1]
        assert ranked.tail_bound == 0.2


class TestGEM:
    """Tests for the stick-breaking samplers."""

    def test_mass_telescopes(self):
        """Test that atoms plus the unbroken mass sum to one."""
        for theta in (0.5, 4.0, 30.0):
            gem = sample_gem(theta, 200, SEED)
            assert np.all(gem.atoms >= 0)
            assert abs(gem.total + gem.tail_bound - 1.0) <= 1e-12

    def test_first_stick_mean(self):
        """Test E[X_1] = 1/(1+theta) at theta=4."""
        first = sample_gem_batch(4.0, 1, 10**5, SEED)[:, 0]
        assert within_stderr(first, 1 / 5)

    def test_deterministic(self):
        """Test bit-identical output for a fixed seed."""
        assert np.array_equal(sample_gem(2.0, 50, SEED).atoms, sample_gem(2.0, 50, SEED).atoms)

    def test_batch_row_matches_single(self):
        """Test that the first batch row is the single draw."""
        np.testing.assert_allclose(sample_gem_batch(3.0, 40, 7, SEED)[0],
                                   sample_gem(3.0, 40, SEED).atoms, rtol=1e-14)

    def test_until_extends_prefix(self):
        """Test that sampling to a tolerance continues the same sticks."""
        prefix = sample_gem(1.5, 20, SEED).atoms
        full = sample_gem_until(1.5, 1e-9, SEED)
        np.testing.assert_allclose(full.atoms[:20], prefix, rtol=1e-14)
        assert full.tail_bound < 1e-9

    def test_until_rejects_bad_eps(self):
        """Test that eps outside (0, 1) is a domain error."""
        with pytest.raises(DomainError):
            sample_gem_until(1.0, 1.0, SEED)


class TestPoissonDirichlet:
    """Tests for sample_pd."""

    def test_descending_and_tail(self):
        """Test ordering and the stopping rule."""
        pd = sample_pd(2.0, 5, 1e-12, SEED)
        assert pd.order == MassOrder.Descending
        assert np.all(np.diff(pd.atoms) <= 0)
        assert pd.tail_bound < 1e-12
        assert pd.certified

    def test_same_path_as_sorted_gem(self):
        """Test that PD atoms are the ranked GEM atoms of the same stream."""
        pd = sample_pd(3.0, 8, 1e-8, SEED)
        sticks = sample_gem_until(3.0, 1e-8, SEED)
        assert np.array_equal(pd.atoms, np.sort(sticks.atoms)[::-1][:8])

    def test_uncertified_flag(self):
        """Test that ranks beyond the generated atoms are flagged."""
        pd = sample_pd(1.0, 10**4, 1e-3, SEED)
        assert not pd.certified

    def test_largest_atom_mean(self):
        """Test E[P_1] at theta=1 against the Golomb-Dickman constant."""
        largest = sample_gem_batch(1.0, 64, 10**5, SEED).max(axis=1)
        assert abs(largest.mean() - 0.6243) <= 0.005


class TestDirichlet:
    """Tests for the symmetric Dirichlet samplers."""

    def test_sums_to_one(self):
        """Test that components sum to one, including small alpha."""
        for alpha in (0.01, 0.5, 3.0):
            p = sample_dirichlet_symmetric(6, alpha, SEED)
            assert abs(p.sum() - 1.0) <= 1e-12
            assert np.all(p >= 0)

    def test_second_moment(self):
        """Test E[p_1^2] = 3/8 for Dirichlet(1/2, 1/2)."""
        p = sample_dirichlet_batch(2, 0.5, 10**5, SEED)
        assert within_stderr(p[:, 0] ** 2, 3 / 8)

    def test_size_biased_feasible(self):
        """Test that size-biased vectors lie in the simplex."""
        y = sample_size_biased_dirichlet(5.0, 8, SEED)
        assert y.shape == (7,)
        assert np.all(y >= 0)
        assert y.sum() <= 1.0 + 1e-12

    def test_size_biased_beta_means(self):
        """Test E[V_i] = (theta/K+1)/(theta/K+1+(K-i)theta/K)."""
        theta, K = 3.0, 5
        ys = sample_size_biased_dirichlet_batch(theta, K, 10**5, SEED)
        used = np.hstack((np.zeros((ys.shape[0], 1)), np.cumsum(ys, axis=1)[:, :-1]))
        vs = ys / (1.0 - used)
        alpha = theta / K
        for i in range(1, K):
            expected = (alpha + 1) / (alpha + 1 + (K - i) * alpha)
            assert within_stderr(vs[:, i - 1], expected)

    def test_size_biased_two_alleles(self):
        """Test that K=2 gives Y_1 ~ Beta(theta/2+1, theta/2)."""
        y1 = sample_size_biased_dirichlet_batch(3.0, 2, 10**5, SEED)[:, 0]
        assert within_stderr(y1, 2.5 / 4.0)
        assert within_stderr(y1 ** 2, 2.5 * 3.5 / (4.0 * 5.0))


class TestEwensPartitions:
    """Tests for sample_ewens_partition and sample_kn."""

    def test_single_individual(self):
        """Test that n=1 always gives one singleton."""
        assert sample_ewens_partition(3.0, 1, SEED) == AllelePartition(1, (1,))

    def test_partitions_are_valid(self):
        """Test that every draw is a partition of n."""
        for a in sample_ewens_batch(2.0, 9, 200, SEED):
            assert a.n == 9

    def test_tiny_theta_single_block(self):
        """Test that theta near zero gives one allele."""
        draws = sample_ewens_batch(1e-6, 5, 1000, SEED)
        assert all(a.counts == (0, 0, 0, 0, 1) for a in draws)

    def test_kn_single_individual(self):
        """Test that n=1 gives one allele."""
        assert sample_kn(5.0, 1, SEED) == 1

    def test_kn_mean(self):
        """Test the Bernoulli-sum sampler against kn_mean."""
        draws = sample_kn_batch(2.0, 50, 10**5, SEED)
        assert draws.min() >= 1 and draws.max() <= 50
        assert within_stderr(draws, kn_mean(2.0, 50))

    def test_kn_batch_row_matches_single(self):
        """Test that the first batch entry is the single draw."""
        assert sample_kn_batch(2.0, 30, 9, SEED)[0] == sample_kn(2.0, 30, SEED)
