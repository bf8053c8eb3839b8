"""Tests for run configuration and dispatch."""

import json

import pytest

from constants import BallScale, Coupling, EventKind, RegimeCase
from core import (
    RunConfig,
    event_from_params,
    output_path,
    parse_params,
    regime_from_params,
    run,
    targets_for,
)
from errors import UsageError
from exact_dist import AllelePartition


def _run_json(capsys, command, target, **params):
    result = run(RunConfig(command, target, params))
    return result, json.loads(capsys.readouterr().out)


class TestParseParams:
    """Tests for parse_params."""

    def test_converts_values(self):
        """Test conversion of grids, lists, enums and partitions."""
        params = parse_params({"grid": "1e2:10:9", "xs": "0.3,0.2", "case": "B",
                               "partition": "3,0,0", "n": "6", "seed": None})
        assert len(params["grid"]) == 9
        assert params["grid"][-1] == pytest.approx(1e10)
        assert params["xs"] == [0.3, 0.2]
        assert params["case"] == RegimeCase.B
        assert params["partition"] == AllelePartition(3, (3, 0, 0))
        assert params["n"] == 6
        assert "seed" not in params

    def test_bad_value_names_key(self):
        """Test that a value that does not parse is a UsageError naming its key."""
        with pytest.raises(UsageError) as excinfo:
            parse_params({"theta": "abc"})
        assert excinfo.value.key == "theta"

    def test_bad_grid(self):
        """Test that a malformed grid is rejected."""
        with pytest.raises(UsageError) as excinfo:
            parse_params({"grid": "1e2:10"})
        assert excinfo.value.key == "grid"

    def test_infeasible_partition(self):
        """Test that counts not summing to n are rejected under the partition key."""
        with pytest.raises(UsageError) as excinfo:
            parse_params({"partition": "1,1"})
        assert excinfo.value.key == "partition"

    def test_unknown_case(self):
        """Test that an unknown regime label is rejected."""
        with pytest.raises(UsageError) as excinfo:
            parse_params({"case": "E"})
        assert excinfo.value.key == "case"


class TestRunConfig:
    """Tests for RunConfig.validate."""

    def test_unknown_command(self):
        """Test that an unknown command is rejected."""
        with pytest.raises(UsageError) as excinfo:
            RunConfig("plot", "esf").validate()
        assert excinfo.value.key == "command"

    def test_unknown_target(self):
        """Test that an unknown target is rejected."""
        with pytest.raises(UsageError) as excinfo:
            RunConfig("pmf", "poisson").validate()
        assert excinfo.value.key == "target"

    def test_missing_required_key(self):
        """Test that a missing required parameter is named."""
        with pytest.raises(UsageError) as excinfo:
            RunConfig("pmf", "esf", {"partition": AllelePartition(3, (3, 0, 0))}).validate()
        assert excinfo.value.key == "theta"

    def test_unknown_suite(self):
        """Test that verify rejects an unknown suite id."""
        with pytest.raises(UsageError) as excinfo:
            RunConfig("verify", "thm-9.9").validate()
        assert excinfo.value.key == "suite"

    def test_unknown_format(self):
        """Test that an unknown output format is rejected."""
        with pytest.raises(UsageError) as excinfo:
            RunConfig("rate", "esf", {"partition": AllelePartition(1, (1,))}, format="xml").validate()
        assert excinfo.value.key == "format"

    def test_seed(self):
        """Test the seed spec built from seed and stream."""
        spec = RunConfig("sample", "gem", {"seed": 5, "stream": 2}).seed()
        assert (spec.master_seed, spec.stream_index) == (5, 2)

    def test_targets_for(self):
        """Test the listed targets of a command."""
        assert "esf" in targets_for("pmf")
        assert "thm-4.2" in targets_for("verify")


class TestRegimeAndEvent:
    """Tests for regime_from_params and event_from_params."""

    def test_power_coupling(self):
        """Test that an exponent gives a power coupling."""
        regime = regime_from_params({"case": RegimeCase.B, "b": 0.5})
        assert regime.coupling == Coupling.Power
        assert regime.n_of_theta(1e4) == 100

    def test_pinned(self):
        """Test that n without an exponent pins the sample size."""
        regime = regime_from_params({"case": RegimeCase.D, "n": 1000})
        assert regime.coupling == Coupling.Fixed
        assert regime.n_of_theta(10.0) == 1000

    def test_case_c(self):
        """Test case C with its ratio."""
        assert regime_from_params({"case": RegimeCase.C, "c": 2.0}).n_of_theta(100.0) == 50

    def test_missing_coupling(self):
        """Test that case B without b or n is rejected."""
        with pytest.raises(UsageError) as excinfo:
            regime_from_params({"case": RegimeCase.B})
        assert excinfo.value.key == "n"

    def test_kn_ball(self):
        """Test building a theta-log kn ball."""
        event = event_from_params({"event": EventKind.KnBall, "x": 1.0, "delta": 0.02,
                                   "scale": BallScale.ThetaLog})
        assert event.kind == EventKind.KnBall
        assert event.delta == 0.02
        assert event.scale == BallScale.ThetaLog

    def test_event_missing_center(self):
        """Test that a ball without its center is rejected."""
        with pytest.raises(UsageError) as excinfo:
            event_from_params({"event": EventKind.AgeclassJointBall})
        assert excinfo.value.key == "xs"


class TestRun:
    """Tests for run."""

    def test_pmf_esf(self, capsys):
        """Test that three singletons at theta=1 have probability 1/6."""
        result, document = _run_json(capsys, "pmf", "esf", theta=1.0, partition=AllelePartition(3, (3, 0, 0)))
        assert result.exit_code == 0
        assert document["rows"][0]["prob"] == pytest.approx(1 / 6, rel=1e-12)
        assert document["meta"]["params"]["partition"] == "3,0,0"
        assert document["meta"]["passed"] is True

    def test_rate_case_c_at_mean(self, capsys):
        """Test that the case C rate vanishes at c log(1 + 1/c)."""
        _, document = _run_json(capsys, "rate", "caseC", x=0.6931, c=1.0)
        assert document["rows"][0]["rate"] == pytest.approx(0.0, abs=1e-6)

    def test_rate_esf(self, capsys):
        """Test the partition rate n minus the number of blocks."""
        _, document = _run_json(capsys, "rate", "esf", partition=AllelePartition(3, (0, 0, 1)))
        assert document["rows"][0]["rate"] == 2.0

    def test_pmf_kn_row(self, capsys):
        """Test that the full K_n row sums to one."""
        _, document = _run_json(capsys, "pmf", "kn", theta=2.0, n=5)
        assert [row["k"] for row in document["rows"]] == [1, 2, 3, 4, 5]
        assert sum(row["prob"] for row in document["rows"]) == pytest.approx(1.0)

    def test_sample_reproducible(self, capsys):
        """Test that equal seeds give equal draws and the seed is recorded."""
        _, first = _run_json(capsys, "sample", "gem", theta=2.0, count=3, N=2, seed=11)
        _, second = _run_json(capsys, "sample", "gem", theta=2.0, count=3, N=2, seed=11)
        assert len(first["rows"]) == 6
        assert first["rows"] == second["rows"]
        assert first["meta"]["seed"] == {"master_seed": 11, "stream_index": 0}

    def test_sample_ewens(self, capsys):
        """Test that sampled partitions are feasible."""
        _, document = _run_json(capsys, "sample", "ewens", theta=1.5, n=7, N=4)
        for row in document["rows"]:
            counts = [int(c) for c in row["partition"].split(",")]
            assert sum(j * c for j, c in enumerate(counts, start=1)) == 7
            assert row["blocks"] == sum(counts)

    def test_sample_pd_meta(self, capsys):
        """Test that PD draws carry their tail bound."""
        _, document = _run_json(capsys, "sample", "pd", theta=1.0, top_m=3)
        assert len(document["rows"]) == 3
        assert "tail_bound" in document["meta"]

    def test_verify_writes_file(self, tmp_path, capsys):
        """Test the thm-4.2 suite on a nine-point grid written to a file."""
        path = tmp_path / "thm-4.2.json"
        params = parse_params({"n": "6", "k": "3", "grid": "1e2:10:9"})
        result = run(RunConfig("verify", "thm-4.2", params, str(path)))
        assert result.exit_code == 0
        assert result.path == str(path)
        document = json.loads(path.read_text())
        assert len(document["rows"]) == 9
        assert document["meta"]["extrapolated_rate"] == pytest.approx(3.0, abs=0.02)
        assert "thm-4.2: PASS" in capsys.readouterr().err

    def test_verify_failure_exit_code(self, capsys):
        """Test that a failing suite exits with 1."""
        result = run(RunConfig("verify", "thm-4.2", {"tolerance": 1e-12}))
        assert result.exit_code == 1
        assert result.table.meta["passed"] is False

    def test_output_dir_env(self, tmp_path, monkeypatch):
        """Test that EWENS_LDP_OUTPUT_DIR names the output directory."""
        monkeypatch.setenv("EWENS_LDP_OUTPUT_DIR", str(tmp_path))
        config = RunConfig("rate", "esf", {"partition": AllelePartition(2, (2, 0))}, format="csv")
        result = run(config)
        assert result.path == str(tmp_path / "rate-esf.csv")
        assert output_path(config) == result.path
        assert (tmp_path / "rate-esf.csv").read_text().splitlines()[1] == "rate"

    def test_table_lln(self, capsys):
        """Test the law-of-large-numbers table in case A."""
        _, document = _run_json(capsys, "table", "lln", case=RegimeCase.A, n=5,
                                grid=[10.0, 100.0, 1000.0, 10000.0])
        assert len(document["rows"]) == 4
        assert document["rows"][-1]["normalised_mean"] == pytest.approx(5.0, abs=0.01)
