from enum import StrEnum

VERSION = "0.1.0"

# caps and budgets
PARTITION_CAP = 25
STIRLING_CAP = 5000
IRWIN_HALL_CAP = 10_000
CONDITIONAL_BUDGET = 10**7
LATTICE_BUDGET = 10**7
SNAP_DENOMINATOR = 2**64

LOG_PROB_SLACK = 1e-12
MASS_SLACK = 1e-12
GOF_SIGNIFICANCE = 1e-3
GOF_MIN_EXPECTED = 5.0
DEFAULT_DELTA = 0.01
DEFAULT_SEED = 20240611
MIN_GRID_POINTS = 4
LATTICE_EDGE_SLACK = 1e-9

OUTPUT_DIR_ENV = "EWENS_LDP_OUTPUT_DIR"


class _Options(StrEnum):

    @classmethod
    def get_options(cls) -> list:
        """Returns a list of all the strings defined in the enumeration."""
        return [item.value for item in cls]


class Command(_Options):
    Sample = "sample"
    Pmf = "pmf"
    Rate = "rate"
    Verify = "verify"
    Table = "table"


class OutputFormat(_Options):
    JSON = "json"
    CSV = "csv"


class RegimeCase(_Options):
    A = "A"
    B = "B"
    C = "C"
    D = "D"


class SpeedKind(_Options):
    Alpha = "alpha"
    Beta = "beta"
    Gamma = "gamma"


class Coupling(_Options):
    Fixed = "fixed"
    Power = "power"
    Linear = "linear"


class EventKind(_Options):
    PartitionPoint = "partition-point"
    KnPoint = "kn-point"
    KnBall = "kn-ball"
    AgeclassPoint = "ageclass-point"
    AgeclassBall = "ageclass-ball"
    AgeclassJointPoint = "ageclass-joint-point"
    AgeclassJointBall = "ageclass-joint-ball"


class BallScale(_Options):
    Sample = "sample"
    ThetaLog = "theta-log"


class GofKind(_Options):
    Ewens = "ewens"
    Kn = "kn"
    GEM = "gem"
    DirichletMax = "dirichlet-max"
