"""Run configuration and command dispatch for ewens-ldp."""

import logging
import math
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from constants import (
    DEFAULT_SEED,
    OUTPUT_DIR_ENV,
    VERSION,
    BallScale,
    Command,
    EventKind,
    OutputFormat,
    RegimeCase,
)
from emitter import get_emitter
from errors import UsageError
from exact_dist import (
    AllelePartition,
    ageclass1_log_pmf,
    ageclass_joint_log_pmf,
    conditional_sampling_log_prob,
    dirichletK_log_pmf,
    esf_log_pmf,
    kn_log_mgf,
    kn_log_pmf,
    kn_log_pmf_row,
    kn_mean,
)
from ldp_lab import (
    SUITES,
    EventSpec,
    ResultTable,
    ScalingRegime,
    delta_sensitivity,
    dirichlet_rate_curve,
    gem_log_density,
    geometric_grid,
    get_suite,
    lln_table,
    mgf_limit_curve,
    rate_curve,
    run_suite,
)
from rates import (
    cgf_limit,
    constrained_inf_relent,
    legendre_caseC,
    rate_ageclass_c,
    rate_ageclass_regime,
    rate_beta_stick,
    rate_esf,
    rate_kn_regime,
    rate_relative_entropy,
    rate_residual_mass,
    rate_sizebiased_prefix,
    rate_sizebiased_SK,
)
from samplers import (
    SeedSpec,
    sample_dirichlet_batch,
    sample_gem_batch,
    sample_kn_batch,
    sample_pd,
    sample_size_biased_dirichlet_batch,
)
from samplers.partitions import sample_ewens_counts
from simplex_geom import OrderStatPoint, irwin_hall_cdf, order_stat_log_density

logger = logging.getLogger(__name__)


def _int_list(text: str) -> List[int]:
    return [int(v) for v in str(text).split(",") if v.strip()]


def _float_list(text: str) -> List[float]:
    return [float(v) for v in str(text).split(",") if v.strip()]


def parse_geometric_grid(text: str) -> List[float]:
    """Parse "start:factor:count" into a geometric grid."""
    try:
        start, factor, count = str(text).split(":")
        return geometric_grid(float(start), float(factor), int(count))
    except ValueError as e:
        if isinstance(e, UsageError):
            raise
        raise UsageError(f"expected start:factor:count, got '{text}'", key="grid") from e


def parse_linear_grid(text: str) -> List[float]:
    """Parse "start:stop:count" into an evenly spaced grid."""
    try:
        start, stop, count = str(text).split(":")
        return np.linspace(float(start), float(stop), int(count)).tolist()
    except ValueError as e:
        raise UsageError(f"expected start:stop:count, got '{text}'", key="t_grid") from e


# parser for every parameter key accepted on the command line
PARAM_TYPES: Dict[str, Callable[[str], Any]] = {
    "theta": float,
    "n": int,
    "k": int,
    "ks": _int_list,
    "K": int,
    "m": int,
    "alpha": float,
    "c": float,
    "b": float,
    "d": float,
    "e": float,
    "s": float,
    "x": float,
    "xs": _float_list,
    "p": _float_list,
    "t": float,
    "t_grid": parse_linear_grid,
    "grid": parse_geometric_grid,
    "delta": float,
    "N": int,
    "seed": int,
    "stream": int,
    "count": int,
    "top_m": int,
    "eps": float,
    "index": int,
    "tolerance": float,
    "budget": float,
    "case": RegimeCase,
    "event": EventKind,
    "scale": BallScale,
    "partition": AllelePartition.from_string,
}

def parse_params(raw: Dict[str, Any]) -> Dict[str, Any]:
    """
    Convert raw string values with PARAM_TYPES; None values are dropped.

    Raises:
        UsageError: On an unknown key or a value that does not parse.
    """
    params = {}
    for key, value in raw.items():
        if value is None:
            continue
        if key not in PARAM_TYPES:
            raise UsageError("unknown parameter", key=key)
        if not isinstance(value, str):
            params[key] = value
            continue
        try:
            params[key] = PARAM_TYPES[key](value)
        except UsageError:
            raise
        except ValueError as e:
            raise UsageError(f"invalid value '{value}'", key=key) from e
    return params


REQUIRED: Dict[Command, Dict[str, tuple]] = {
    Command.Sample: {
        "gem": ("theta", "count"),
        "pd": ("theta", "top_m"),
        "dirichlet": ("K", "alpha"),
        "size-biased": ("theta", "K"),
        "ewens": ("theta", "n"),
        "kn": ("theta", "n"),
    },
    Command.Pmf: {
        "esf": ("theta", "partition"),
        "dirichlet": ("theta", "K", "partition"),
        "kn": ("theta", "n"),
        "kn-mgf": ("theta", "n", "t"),
        "kn-mean": ("theta", "n"),
        "ageclass": ("theta", "n", "k"),
        "ageclass-joint": ("theta", "n", "ks"),
        "conditional": ("partition", "p"),
        "gem-density": ("theta", "xs"),
        "order-stat": ("p", "K"),
        "irwin-hall": ("n", "x"),
    },
    Command.Rate: {
        "residual": ("xs",),
        "relent": ("p",),
        "constrained": ("p", "K"),
        "beta-stick": ("x", "K", "index"),
        "sk": ("xs", "K"),
        "sk-prefix": ("xs", "K"),
        "esf": ("partition",),
        "cgf": ("case", "t"),
        "caseC": ("x", "c"),
        "ageclass-c": ("x", "c"),
        "kn": ("case", "x"),
        "ageclass": ("case", "xs"),
    },
    Command.Table: {
        "rate-curve": ("case", "event", "grid"),
        "mgf": ("case", "theta"),
        "lln": ("case", "grid"),
        "dirichlet-curve": ("partition", "grid"),
        "delta-sweep": ("case", "event", "theta"),
    },
}


def targets_for(command: Command) -> List[str]:
    """Targets accepted by a command; suite ids for verify."""
    if command == Command.Verify:
        return list(SUITES)
    return list(REQUIRED[Command(command)])


@dataclass
class RunConfig:
    """
    Everything one invocation needs.

    Attributes:
        command: sample, pmf, rate, verify or table.
        target: What the command acts on, e.g. ``esf`` or a suite id.
        params: Parsed parameter values keyed as in PARAM_TYPES.
        output: Output file; when empty the directory in EWENS_LDP_OUTPUT_DIR
            is used, and without it the table goes to stdout.
        format: json or csv.
    """

    command: str
    target: str
    params: Dict[str, Any] = field(default_factory=dict)
    output: Optional[str] = None
    format: str = OutputFormat.JSON

    def validate(self):
        """
        Check the command, target, format and required keys.

        Raises:
            UsageError: Naming the offending key.
        """
        if self.command not in Command.get_options():
            raise UsageError(f"unknown command '{self.command}'", key="command")
        self.command = Command(self.command)
        if self.format not in OutputFormat.get_options():
            raise UsageError(f"unknown format '{self.format}'", key="format")
        self.format = OutputFormat(self.format)
        unknown = set(self.params) - set(PARAM_TYPES)
        if unknown:
            raise UsageError(f"unknown parameter(s) {sorted(unknown)}", key=sorted(unknown)[0])
        if self.command == Command.Verify:
            get_suite(self.target)
            return
        required = REQUIRED[self.command].get(self.target)
        if required is None:
            raise UsageError(f"unknown {self.command} target '{self.target}', expected one of "
                             f"{targets_for(self.command)}", key="target")
        for key in required:
            if self.params.get(key) is None:
                raise UsageError(f"required by {self.command} {self.target}", key=key)

    def seed(self) -> SeedSpec:
        seed, stream = self.params.get("seed"), self.params.get("stream")
        return SeedSpec(DEFAULT_SEED if seed is None else seed, stream or 0)


@dataclass
class RunResult:
    """Exit code, the produced table and where it went."""

    exit_code: int
    table: ResultTable
    path: Optional[str] = None


def regime_from_params(params: Dict[str, Any]) -> ScalingRegime:
    """
    Build a regime from ``case`` and its coupling parameter.

    Case A uses n. Case B takes b (n = theta^b) or a pinned n. Case C takes
    c, with n pinned when given. Case D takes d (n = theta^d) or a pinned n.
    """
    case = RegimeCase(params["case"])
    n, c = params.get("n"), params.get("c")
    if case == RegimeCase.A:
        if n is None:
            raise UsageError("case A needs n", key="n")
        return ScalingRegime.case_a(n)
    if case == RegimeCase.C:
        if c is None:
            raise UsageError("case C needs c", key="c")
        return ScalingRegime.pinned(case, n, c=c) if n is not None else ScalingRegime.case_c(c)
    exponent = params.get("b" if case == RegimeCase.B else "d")
    if exponent is not None:
        return ScalingRegime.case_b(exponent) if case == RegimeCase.B else ScalingRegime.case_d(exponent)
    if n is None:
        raise UsageError(f"case {case} needs n or a growth exponent", key="n")
    return ScalingRegime.pinned(case, n)


def _require(params: Dict[str, Any], key: str):
    if params.get(key) is None:
        raise UsageError("required by the event kind", key=key)
    return params[key]


def event_from_params(params: Dict[str, Any]) -> EventSpec:
    """Build the EventSpec named by ``event`` from the matching parameters."""
    kind = EventKind(params["event"])
    delta = params.get("delta")
    ball = {} if delta is None else {"delta": delta}
    if kind == EventKind.PartitionPoint:
        return EventSpec.partition_point(_require(params, "partition"))
    if kind == EventKind.KnPoint:
        return EventSpec.kn_point(_require(params, "k"))
    if kind == EventKind.KnBall:
        return EventSpec.kn_ball(_require(params, "x"), scale=params.get("scale") or BallScale.Sample, **ball)
    if kind == EventKind.AgeclassPoint:
        return EventSpec.ageclass_point(_require(params, "k"))
    if kind == EventKind.AgeclassBall:
        return EventSpec.ageclass_ball(_require(params, "x"), **ball)
    if kind == EventKind.AgeclassJointPoint:
        return EventSpec.ageclass_joint_point(_require(params, "ks"))
    return EventSpec.ageclass_joint_ball(_require(params, "xs"), **ball)


def _sample(target: str, p: Dict[str, Any], seed: SeedSpec) -> ResultTable:
    N = p.get("N") or 1
    if target == "ewens":
        table = ResultTable(["replicate", "partition", "blocks"])
        for i, row in enumerate(sample_ewens_counts(p["theta"], p["n"], N, seed)):
            a = AllelePartition(p["n"], tuple(row))
            table.add_row(i, str(a), a.blocks)
        return table
    if target == "kn":
        table = ResultTable(["replicate", "k"])
        for i, k in enumerate(sample_kn_batch(p["theta"], p["n"], N, seed)):
            table.add_row(i, k)
        return table

    table = ResultTable(["replicate", "index", "value"])
    if target == "pd":
        if N != 1:
            raise UsageError("pd draws one truncated vector per run", key="N")
        mass = sample_pd(p["theta"], p["top_m"], p.get("eps") or 1e-6, seed)
        batch = mass.atoms[None, :]
        table.meta.update({"tail_bound": mass.tail_bound, "certified": mass.certified})
    elif target == "gem":
        batch = sample_gem_batch(p["theta"], p["count"], N, seed)
    elif target == "dirichlet":
        batch = sample_dirichlet_batch(p["K"], p["alpha"], N, seed)
    else:
        batch = sample_size_biased_dirichlet_batch(p["theta"], p["K"], N, seed)
    for i, row in enumerate(batch):
        for j, value in enumerate(row, start=1):
            table.add_row(i, j, value)
    return table


def _log_value(log_prob: float) -> ResultTable:
    table = ResultTable(["log_prob", "prob"])
    table.add_row(log_prob, math.exp(log_prob))
    return table


def _pmf(target: str, p: Dict[str, Any]) -> ResultTable:
    if target == "esf":
        return _log_value(esf_log_pmf(p["theta"], p["partition"]))
    if target == "dirichlet":
        return _log_value(dirichletK_log_pmf(p["theta"], p["K"], p["partition"]))
    if target == "kn":
        if p.get("k") is not None:
            return _log_value(kn_log_pmf(p["theta"], p["n"], p["k"]))
        table = ResultTable(["k", "log_prob", "prob"])
        for k, value in enumerate(kn_log_pmf_row(p["theta"], p["n"]), start=1):
            table.add_row(k, value, math.exp(value))
        return table
    if target == "kn-mgf":
        table = ResultTable(["t", "log_mgf"])
        table.add_row(p["t"], kn_log_mgf(p["theta"], p["n"], p["t"]))
        return table
    if target == "kn-mean":
        table = ResultTable(["mean"])
        table.add_row(kn_mean(p["theta"], p["n"]))
        return table
    if target == "ageclass":
        return _log_value(ageclass1_log_pmf(p["theta"], p["n"], p["k"]))
    if target == "ageclass-joint":
        return _log_value(ageclass_joint_log_pmf(p["theta"], p["n"], p["ks"]))
    if target == "conditional":
        return _log_value(conditional_sampling_log_prob(p["partition"], p["p"]))
    if target == "gem-density":
        table = ResultTable(["log_density"])
        table.add_row(gem_log_density(p["theta"], p["xs"]))
        return table
    if target == "order-stat":
        table = ResultTable(["log_density"])
        table.add_row(order_stat_log_density(OrderStatPoint(tuple(p["p"]), p["K"])))
        return table
    table = ResultTable(["cdf"])
    table.add_row(irwin_hall_cdf(p["n"], p["x"]))
    return table


def _rate(target: str, p: Dict[str, Any]) -> ResultTable:
    if target == "residual":
        value = rate_residual_mass(p["xs"])
    elif target == "relent":
        value = rate_relative_entropy(p["p"])
    elif target == "constrained":
        value = constrained_inf_relent(p["p"], p["K"])
    elif target == "beta-stick":
        value = rate_beta_stick(p["x"], p["K"], p["index"])
    elif target == "sk":
        value = rate_sizebiased_SK(p["xs"], p["K"])
    elif target == "sk-prefix":
        value = rate_sizebiased_prefix(p["xs"], p["K"])
    elif target == "esf":
        value = rate_esf(p["partition"])
    elif target == "cgf":
        value = cgf_limit(p["case"], p["t"], n=p.get("n"), c=p.get("c"))
    elif target == "caseC":
        value = legendre_caseC(p["x"], p["c"])
    elif target == "ageclass-c":
        value = rate_ageclass_c(p["x"], p["c"])
    elif target == "kn":
        value = rate_kn_regime(p["case"], p["x"], n=p.get("n"), c=p.get("c"))
    else:
        value = rate_ageclass_regime(p["case"], p["xs"], c=p.get("c"))
    table = ResultTable(["rate"])
    table.add_row(float(value))
    return table


def _table(target: str, p: Dict[str, Any]) -> ResultTable:
    if target == "dirichlet-curve":
        curve = dirichlet_rate_curve(p["partition"], p["grid"], p.get("e") or 1.0, p.get("s") or 1.0)
        return curve.to_result_table()
    regime = regime_from_params(p)
    if target == "rate-curve":
        return rate_curve(regime, event_from_params(p), p["grid"]).to_result_table()
    if target == "mgf":
        ts = p.get("t_grid") or np.linspace(-2.0, 2.0, 21).tolist()
        kwargs = {} if p.get("tolerance") is None else {"tolerance": p["tolerance"]}
        return mgf_limit_curve(regime, ts, p["theta"], **kwargs)
    if target == "lln":
        return lln_table(regime, p["grid"])
    event = event_from_params(p)
    if p.get("delta") is not None:
        return delta_sensitivity(regime, event, p["theta"], sorted({0.005, 0.01, 0.02, p["delta"]}))
    return delta_sensitivity(regime, event, p["theta"])


def _verify(target: str, p: Dict[str, Any]):
    result = run_suite(target, p)
    print(f"{result.suite_id}: {'PASS' if result.passed else 'FAIL'} - {result.summary}", file=sys.stderr)
    return result.table, result.passed


def _plain_params(params: Dict[str, Any]) -> Dict[str, Any]:
    return {key: (str(value) if isinstance(value, AllelePartition) else value) for key, value in params.items()}


def output_path(config: RunConfig) -> Optional[str]:
    """The file a run writes to, or None for stdout."""
    if config.output:
        return config.output
    directory = os.environ.get(OUTPUT_DIR_ENV)
    if directory:
        return os.path.join(directory, f"{config.command}-{config.target}.{config.format}")
    return None


def run(config: RunConfig) -> RunResult:
    """
    Run one command and write its table.

    Args:
        config: The run configuration; it is validated first.

    Returns:
        Exit code 0, or 1 when a verification suite fails, with the table and path.

    Raises:
        UsageError: If the configuration is invalid.
        LabError: Propagated from the library.
    """
    config.validate()
    started = time.perf_counter()
    params = config.params
    seed = config.seed()
    passed = True
    if config.command == Command.Sample:
        table = _sample(config.target, params, seed)
    elif config.command == Command.Pmf:
        table = _pmf(config.target, params)
    elif config.command == Command.Rate:
        table = _rate(config.target, params)
    elif config.command == Command.Table:
        table = _table(config.target, params)
    elif config.command == Command.Verify:
        table, passed = _verify(config.target, params)
    else:
        raise UsageError(f"unsupported command '{config.command}'", key="command")

    table.meta.update({
        "command": str(config.command),
        "target": config.target,
        "params": _plain_params(params),
        "seed": seed.as_dict(),
        "version": VERSION,
        "wall_time": time.perf_counter() - started,
        "partial": bool(table.meta.get("partial", False)),
        "passed": passed,
    })

    text_emitter = get_emitter(table, config.format)
    path = output_path(config)
    if path:
        text_emitter.write(path)
        logger.info("wrote %s", path)
    else:
        print(text_emitter.emit(), end="")
    return RunResult(0 if passed else 1, table, path)
