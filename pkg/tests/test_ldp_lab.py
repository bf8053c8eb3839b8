"""Tests for the ldp_lab package."""

import logging
import math

import numpy as np
import pytest
from scipy.special import logsumexp

from constants import BallScale, Coupling, EventKind, GofKind, RegimeCase, SpeedKind
from errors import ComplexityError, DomainError, UsageError
from exact_dist import (
    AllelePartition,
    ageclass1_log_pmf,
    ageclass_joint_log_pmf,
    esf_log_pmf,
    kn_log_pmf,
)
from ldp_lab import (
    SUITES,
    EventSpec,
    ScalingRegime,
    consistency_ewens_kn,
    delta_sensitivity,
    dirichlet_rate_curve,
    event_log_prob,
    gem_log_density,
    geometric_grid,
    get_suite,
    gof_validate,
    lln_table,
    mgf_limit_curve,
    rate_curve,
    remainder_bound,
    run_all,
    run_suite,
    speed,
)
from ldp_lab.gof import gem_cell_masses
from samplers import SeedSpec

GRID = geometric_grid(1e2, 10.0, 9)
T_GRID = np.linspace(-2.0, 2.0, 21)


class TestScalingRegime:
    """Tests for ScalingRegime and speed."""

    def test_couplings(self):
        """Test n(theta) for each coupling."""
        assert ScalingRegime.case_a(5).n_of_theta(1e6) == 5
        assert ScalingRegime.case_b(0.5).n_of_theta(100.0) == 10
        assert ScalingRegime.case_c(2.0).n_of_theta(100.0) == 50
        assert ScalingRegime.case_d(2.0).n_of_theta(10.0) == 100
        assert ScalingRegime.case_c(1.0).n_of_theta(1e4) == 10**4

    def test_invalid(self):
        """Test the parameter checks."""
        with pytest.raises(UsageError):
            ScalingRegime.case_b(1.5)
        with pytest.raises(UsageError):
            ScalingRegime.case_d(0.5)
        with pytest.raises(UsageError):
            ScalingRegime(RegimeCase.C, Coupling.Fixed, 10)
        with pytest.raises(UsageError):
            ScalingRegime.case_a(2.5)

    def test_speeds(self):
        """Test the speed table in the four cases."""
        assert speed(ScalingRegime.case_a(5), SpeedKind.Alpha, math.e) == pytest.approx(1.0)
        regime_c = ScalingRegime.case_c(1.0)
        assert speed(regime_c, SpeedKind.Alpha, 1e4) == 1e4
        assert speed(regime_c, SpeedKind.Beta, 1e4) == 1.0
        regime_d = ScalingRegime.pinned(RegimeCase.D, 10**6)
        assert speed(regime_d, SpeedKind.Alpha, 100.0) == pytest.approx(100 * math.log(1e4))
        assert speed(regime_d, SpeedKind.Beta, 100.0) == 1.0
        assert speed(regime_d, SpeedKind.Gamma, 100.0) == 100.0
        regime_b = ScalingRegime.pinned(RegimeCase.B, 10)
        assert speed(regime_b, SpeedKind.Alpha, 1000.0) == pytest.approx(10 * math.log(100))
        assert speed(regime_b, SpeedKind.Beta, 1000.0) == pytest.approx(math.log(100))

    def test_undefined_speed(self):
        """Test that case B with theta below n has no speed."""
        with pytest.raises(UsageError):
            speed(ScalingRegime.pinned(RegimeCase.B, 10), SpeedKind.Alpha, 5.0)

    def test_coherence(self):
        """Test that built-in couplings match their case on the test grids."""
        assert ScalingRegime.case_a(4).check_coherence(GRID)
        assert ScalingRegime.case_b(0.5).check_coherence([1e2, 1e4, 1e6])
        assert ScalingRegime.case_c(1.0).check_coherence([1e2, 1e3, 1e4])
        assert ScalingRegime.case_d(2.0).check_coherence([1e1, 1e2, 1e3])

    def test_incoherent_grid_warns(self, caplog):
        """Test that a mislabelled coupling is logged."""
        regime = ScalingRegime(RegimeCase.B, Coupling.Power, 2.0)
        with caplog.at_level(logging.WARNING):
            assert not regime.check_coherence([10.0, 100.0, 1000.0])
        assert "does not follow regime" in caplog.text


class TestEventLogProb:
    """Tests for EventSpec and event_log_prob."""

    def test_point_events_are_exact(self):
        """Test that point events defer to exact_dist bit for bit."""
        a = AllelePartition.from_string("2,1,0,0")
        assert event_log_prob(3.0, 4, EventSpec.partition_point(a)) == esf_log_pmf(3.0, a)
        assert event_log_prob(1.0, 3, EventSpec.kn_point(2)) == kn_log_pmf(1.0, 3, 2)
        assert event_log_prob(7.0, 9, EventSpec.ageclass_point(4)) == ageclass1_log_pmf(7.0, 9, 4)
        assert (event_log_prob(7.0, 9, EventSpec.ageclass_joint_point([2, 3]))
                == ageclass_joint_log_pmf(7.0, 9, [2, 3]))

    def test_kn_point_hand_value(self):
        """Test theta=1, n=3, k=2."""
        assert event_log_prob(1.0, 3, EventSpec.kn_point(2)) == pytest.approx(math.log(0.5), abs=1e-14)

    def test_partition_size_mismatch(self):
        """Test that a partition of the wrong size is refused."""
        with pytest.raises(UsageError):
            event_log_prob(1.0, 5, EventSpec.partition_point(AllelePartition.from_string("2,1,0,0")))

    def test_kn_ball_concentration(self):
        """Test that K_n/n sits near 1 when theta dwarfs n."""
        value = event_log_prob(1e6, 10, EventSpec.kn_ball(1.0, 0.2))
        assert value == pytest.approx(0.0, abs=1e-6)

    def test_kn_ball_edges(self):
        """Test that lattice points on the boundary are included."""
        value = event_log_prob(2.0, 10, EventSpec.kn_ball(0.5, 0.1))
        expected = logsumexp([kn_log_pmf(2.0, 10, k) for k in (4, 5, 6)])
        assert value == pytest.approx(expected, rel=1e-12)

    def test_empty_ball(self):
        """Test that a ball outside the support has probability zero."""
        assert event_log_prob(2.0, 10, EventSpec.kn_ball(2.0, 0.1)) == float("-inf")

    def test_theta_log_scale(self):
        """Test K_n/(theta log(n/theta)) balls and their domain."""
        event = EventSpec.kn_ball(1.0, 0.5, BallScale.ThetaLog)
        z = 5.0 * math.log(200 / 5.0)
        ks = range(math.ceil(0.5 * z), math.floor(1.5 * z) + 1)
        expected = logsumexp([kn_log_pmf(5.0, 200, k) for k in ks])
        assert event_log_prob(5.0, 200, event) == pytest.approx(expected, rel=1e-12)
        with pytest.raises(DomainError):
            event_log_prob(500.0, 200, event)

    def test_ageclass_ball_matches_direct_sum(self):
        """Test the vectorised lattice sum against scalar summation."""
        n = 10**5
        direct = logsumexp([ageclass1_log_pmf(100.0, n, k) for k in range(29_000, 31_001)])
        value = event_log_prob(100.0, n, EventSpec.ageclass_ball(0.3, 0.01))
        assert value == pytest.approx(direct, rel=1e-12)

    def test_joint_ball_matches_direct_sum(self):
        """Test the two-class ball against a double loop."""
        direct = logsumexp([ageclass_joint_log_pmf(5.0, 20, [k1, k2])
                            for k1 in range(5, 8) for k2 in range(3, 6)])
        value = event_log_prob(5.0, 20, EventSpec.ageclass_joint_ball([0.3, 0.2], 0.05))
        assert value == pytest.approx(direct, rel=1e-12)

    def test_budget(self):
        """Test that oversized lattice sums are refused."""
        with pytest.raises(ComplexityError):
            event_log_prob(100.0, 10**5, EventSpec.ageclass_ball(0.3, 0.01), budget=10)

    def test_invalid_events(self):
        """Test event validation."""
        with pytest.raises(UsageError):
            EventSpec.kn_ball(0.5, 0.0)
        with pytest.raises(UsageError):
            EventSpec.ageclass_joint_point([])
        with pytest.raises(UsageError):
            EventSpec(EventKind.AgeclassBall, center=(0.5,), scale=BallScale.ThetaLog)

    def test_target_rates(self):
        """Test the closed-form targets attached to events."""
        assert EventSpec.kn_point(3).target_rate(ScalingRegime.case_a(6), 6) == 3.0
        assert EventSpec.ageclass_point(3).target_rate(ScalingRegime.case_a(8), 8) == 2.0
        regime_d = ScalingRegime.pinned(RegimeCase.D, 10**7)
        assert EventSpec.ageclass_ball(0.3).target_rate(regime_d, 10**7) == pytest.approx(-math.log(0.7))
        with pytest.raises(UsageError):
            EventSpec.kn_point(3).target_rate(regime_d, 10**7)


class TestGemLogDensity:
    """Tests for gem_log_density."""

    def test_hand_values(self):
        """Test the uniform case and Beta(1, 2)."""
        for x in (0.1, 0.5, 0.9):
            assert gem_log_density(1.0, [x]) == pytest.approx(0.0, abs=1e-15)
        assert gem_log_density(2.0, [0.3]) == pytest.approx(math.log(1.4), abs=1e-14)
        expected = 2 * math.log(3.0) + 2 * math.log(0.5) - math.log(0.8)
        assert gem_log_density(3.0, [0.2, 0.3]) == pytest.approx(expected, abs=1e-14)

    def test_full_mass(self):
        """Test that no mass left for the tail is a domain error."""
        with pytest.raises(DomainError):
            gem_log_density(2.0, [0.6, 0.4])

    def test_cell_masses(self):
        """Test that the density integrates to equal masses on the quantile grid."""
        masses = gem_cell_masses(3.0)
        assert masses.sum() == pytest.approx(1.0, abs=1e-6)
        assert np.allclose(masses, 0.05, atol=1e-6)

    def test_density_rate(self):
        """Test -(1/theta) log density against the residual-mass rate."""
        theta = 1e6
        rng = np.random.default_rng(5)
        for _ in range(10):
            n = int(rng.integers(1, 5))
            x = rng.dirichlet(np.ones(n + 1))[:n] * 0.9
            gap = abs(-gem_log_density(theta, x) / theta + math.log1p(-x.sum()))
            assert gap <= 2 * n * math.log(theta) / theta


class TestRateCurve:
    """Tests for rate_curve and dirichlet_rate_curve."""

    def test_partition_rate(self):
        """Test n=4, a=(0,2,0,0) extrapolating to 2."""
        a = AllelePartition.from_string("0,2,0,0")
        curve = rate_curve(ScalingRegime.case_a(4), EventSpec.partition_point(a), GRID)
        assert abs(curve.extrapolated - 2.0) <= 0.02
        assert curve.residual_ok
        assert curve.target == 2.0

    def test_kn_point_rate(self):
        """Test n=6, k=3 extrapolating to 3 with sorted rows."""
        curve = rate_curve(ScalingRegime.case_a(6), EventSpec.kn_point(3), GRID)
        assert len(curve.thetas) == 9
        assert curve.thetas == sorted(curve.thetas)
        assert all(s > 0 for s in curve.speeds)
        assert abs(curve.extrapolated - 3.0) <= 0.02
        assert curve.passed(0.02)

    def test_ageclass_point_rate(self):
        """Test n=8, k=3 extrapolating to 2."""
        curve = rate_curve(ScalingRegime.case_a(8), EventSpec.ageclass_point(3), GRID)
        assert abs(curve.extrapolated - 2.0) <= 0.05

    def test_short_grid(self):
        """Test that fewer than four points is a usage error."""
        with pytest.raises(UsageError):
            rate_curve(ScalingRegime.case_a(6), EventSpec.kn_point(3), [1e2, 1e3, 1e4])

    def test_unsorted_grid(self):
        """Test that a decreasing grid is a usage error."""
        with pytest.raises(UsageError):
            rate_curve(ScalingRegime.case_a(6), EventSpec.kn_point(3), GRID[::-1])

    def test_impossible_event(self):
        """Test that a zero-probability event is refused."""
        with pytest.raises(UsageError):
            rate_curve(ScalingRegime.case_a(6), EventSpec.kn_point(7), GRID)

    @pytest.mark.parametrize("exponent", [1.0, 2.0])
    def test_dirichlet_rate(self, exponent):
        """Test the K-indexed rate for theta = K and theta = K^2."""
        a = AllelePartition.from_string("0,2,0,0")
        curve = dirichlet_rate_curve(a, geometric_grid(1e2, 10.0, 7), theta_exponent=exponent)
        assert abs(curve.extrapolated - 2.0) <= 0.05

    def test_result_table(self):
        """Test the conversion to a ResultTable."""
        curve = rate_curve(ScalingRegime.case_a(6), EventSpec.kn_point(3), GRID)
        table = curve.to_result_table()
        assert table.columns == ["theta", "n", "speed", "log_prob", "empirical_rate"]
        assert len(table.rows) == 9
        assert table.meta["target_rate"] == 3.0


class TestMgfLimitCurve:
    """Tests for mgf_limit_curve and remainder_bound."""

    def test_case_a_at_one(self):
        """Test n=10, theta=1e8, t=1 against Lambda(1) = 10."""
        table = mgf_limit_curve(ScalingRegime.case_a(10), [1.0], 1e8)
        assert table.column("limit")[0] == 10.0
        assert abs(table.column("difference")[0]) <= 0.05

    def test_case_c(self):
        """Test c=1, theta=n=1e4 on [-2, 2] with the direct tolerance."""
        table = mgf_limit_curve(ScalingRegime.case_c(1.0), T_GRID, 1e4, tolerance=0.01)
        assert len(table.rows) == 21
        assert max(abs(d) for d in table.column("difference")) <= 0.01
        assert table.meta["passed"]

    @pytest.mark.parametrize(
        "regime, theta",
        [
            (ScalingRegime.case_a(10), 1e8),
            (ScalingRegime.pinned(RegimeCase.B, 1000), 1e9),
            (ScalingRegime.pinned(RegimeCase.D, 10**6), 50.0),
        ],
    )
    def test_within_remainder_bound(self, regime, theta):
        """Test that every difference is inside tolerance plus bound."""
        table = mgf_limit_curve(regime, T_GRID, theta)
        assert table.meta["passed"]

    def test_bound_values(self):
        """Test the bound near t = -1 in case A and at t = 2 in case D."""
        assert remainder_bound(ScalingRegime.case_a(10), -1.0, 1e8) == pytest.approx(0.82, abs=0.01)
        value = remainder_bound(ScalingRegime.pinned(RegimeCase.D, 10**6), 2.0, 50.0)
        assert value == pytest.approx((math.e ** 2 + 1) / math.log(2e4) + 0.02, rel=1e-12)


class TestLlnTable:
    """Tests for lln_table."""

    def test_case_c(self):
        """Test E K_n / n against log 2."""
        table = lln_table(ScalingRegime.case_c(1.0), [1e4])
        assert abs(table.column("difference")[0]) <= 1e-3

    def test_case_a(self):
        """Test E K_n near n for huge theta."""
        table = lln_table(ScalingRegime.case_a(5), [1e6])
        assert table.column("normalised_mean")[0] >= 4.99

    def test_case_d(self):
        """Test E K_n / (theta log(n/theta)) against 1."""
        table = lln_table(ScalingRegime.pinned(RegimeCase.D, 10**8), [100.0])
        assert abs(table.column("difference")[0]) <= 0.02


class TestDeltaSensitivity:
    """Tests for delta_sensitivity."""

    def test_case_d_ageclass(self):
        """Test the oldest-allele rate in case D at three radii."""
        table = delta_sensitivity(ScalingRegime.pinned(RegimeCase.D, 10**7),
                                  EventSpec.ageclass_ball(0.3), 100.0)
        assert table.column("delta") == [0.005, 0.01, 0.02]
        rates = table.column("empirical_rate")
        assert abs(rates[1] - math.log(1 / 0.7)) <= 0.05
        assert rates[0] >= rates[1] >= rates[2]


class TestGof:
    """Tests for gof_validate and consistency_ewens_kn."""

    def test_ewens(self):
        """Test the partition sampler against the Ewens formula."""
        report = gof_validate(GofKind.Ewens, {"theta": 2.0, "n": 6}, 200_000, SeedSpec(11, 0))
        assert report.dof == 10
        assert report.passed

    def test_kn(self):
        """Test the K_n sampler against (1/3, 1/2, 1/6)."""
        report = gof_validate(GofKind.Kn, {"theta": 1.0, "n": 3}, 200_000, SeedSpec(11, 1))
        assert report.dof == 2
        assert report.passed

    def test_gem(self):
        """Test the stick-breaking sampler against the GEM density."""
        report = gof_validate(GofKind.GEM, {"theta": 3.0}, 100_000, SeedSpec(11, 2))
        assert report.dof == 19
        assert report.passed

    def test_dirichlet_max(self):
        """Test the largest Dirichlet coordinate against its exact density."""
        report = gof_validate(GofKind.DirichletMax, {"K": 3}, 100_000, SeedSpec(11, 3))
        assert report.dof == 9
        assert report.passed

    def test_too_few_draws(self):
        """Test that small expected counts are a usage error."""
        with pytest.raises(UsageError):
            gof_validate(GofKind.Kn, {"theta": 1.0, "n": 3}, 20)

    def test_unsupported_parameters(self):
        """Test the parameter restrictions of the continuous tests."""
        with pytest.raises(UsageError):
            gof_validate(GofKind.DirichletMax, {"K": 3, "alpha": 2.0}, 1000)
        with pytest.raises(UsageError):
            gof_validate(GofKind.GEM, {"theta": 3.0, "n": 3}, 1000)

    def test_consistency(self):
        """Test the two block-count samplers against each other."""
        report = consistency_ewens_kn(2.0, 10, 20_000, SeedSpec(11, 4))
        assert report.passed
        assert report.to_result_table().rows[0][0] == "ewens-kn"


class TestSuites:
    """Tests for the suite registry."""

    def test_registry(self):
        """Test that every named suite is registered."""
        expected = {
            "esf-norm", "esf-limit", "stirling", "mgf",
            "thm-4.1-A", "thm-4.1-B", "thm-4.1-C", "thm-4.1-D",
            "cor-4.1-A", "cor-4.1-C", "cor-4.1-D",
            "thm-3.3", "thm-3.4", "thm-4.2", "thm-4.3", "thm-4.4", "thm-4.5", "thm-4.6",
            "thm-4.7-B", "thm-4.7-C", "thm-4.7-D",
            "thm-2.3", "thm-2.5", "legendre", "eq-2.19", "eq-2.20", "lemma-3.1",
            "gem-density-rate", "gof-ewens", "gof-kn", "gof-gem", "gof-dirichlet-max", "all",
        }
        assert expected <= set(SUITES)

    def test_unknown(self):
        """Test that an unknown id is a usage error."""
        with pytest.raises(UsageError):
            get_suite("thm-9.9")

    def test_kn_point_suite_with_overrides(self):
        """Test the command-line example with a nine-point grid."""
        result = run_suite("thm-4.2", {"n": 6, "k": 3, "grid": geometric_grid(1e2, 10.0, 9)})
        assert result.passed
        assert len(result.table.rows) == 9

    @pytest.mark.parametrize(
        "suite_id",
        ["legendre", "eq-2.20", "lemma-3.1", "thm-2.3", "thm-2.5", "cor-4.1-C", "thm-4.1-C",
         "thm-4.7-D", "thm-3.3", "gem-density-rate"],
    )
    def test_suites_pass(self, suite_id):
        """Test that fast suites pass with their defaults."""
        result = run_suite(suite_id)
        assert result.passed, result.summary

    def test_case_c_allele_count_suite(self):
        """Test the case C K_n/n curve on a doubling grid within the Stirling cap."""
        result = run_suite("thm-4.4")
        assert result.passed, result.summary
        assert len(result.table.rows) == 6
        assert max(result.table.column("n")) <= 5000
        assert result.table.meta["target_rate"] == pytest.approx(0.0906, abs=1e-3)
        assert result.table.meta["case"] == "C"

    def test_case_d_allele_count_suite(self):
        """Test the case D theta-log scaled curve and its shrinking corrected error."""
        result = run_suite("thm-4.5")
        assert result.passed, result.summary
        errors = result.table.column("error")
        assert errors[-1] < errors[0]
        assert max(result.table.column("n")) == 4900
        assert result.table.meta["target_rate"] == pytest.approx(1.0 - 0.5 * (1.0 + math.log(2.0)))

    def test_case_d_suite_rejects_empty_ball(self):
        """Test that a ball holding no lattice point at the smallest theta is a usage error."""
        with pytest.raises(UsageError):
            run_suite("thm-4.5", {"delta": 1e-4})

    def test_density_rate_prefixes(self):
        """Test the largest-coordinate density rates for prefixes of length two and three."""
        table = run_suite("eq-2.20").table
        checks = dict(zip(table.column("check"), table.column("passed")))
        assert checks["density rate p=[0.2, 0.1] K=1000"]
        assert checks["density rate p=[0.3, 0.2, 0.1] K=1000"]
        assert len(table.rows) == 5

    def test_all_with_spent_budget(self):
        """Test that an exhausted budget stops before the first suite."""
        result = run_all({}, budget=-1.0)
        assert result.table.meta["partial"]
        assert result.table.rows == []
