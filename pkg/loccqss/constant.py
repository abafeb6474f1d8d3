from enum import Enum, IntEnum

# Built-in irreducible polynomials over F_p, constant term first.
# Prime fields use the canonical placeholder x - 0.
BUILTIN_POLYNOMIALS: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 1): (0, 1),
    (3, 1): (0, 1),
    (5, 1): (0, 1),
    (7, 1): (0, 1),
    (2, 2): (1, 1, 1),  # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),  # x^3 + x + 1
    (3, 2): (1, 0, 1),  # x^2 + 1
}

# Largest field order with supported arithmetic
MAX_FIELD_ORDER = 2**16

# Tolerances
NORM_TOLERANCE = 1e-9
DEGENERATE_NORM = 1e-12
SECRET_LOAD_TOLERANCE = 1e-6

# Fixed decimals used when serializing amplitudes and probabilities
FLOAT_DECIMALS = 12

# Default seed, used by the tutorial in README.md
DEFAULT_SEED = 42
DEFAULT_SIMULATE_TRIALS = 1
DEFAULT_VERIFY_TRIALS = 20

# Budget defaults
DEFAULT_MAX_CODEWORDS = 2**24
DEFAULT_MAX_SUBSET_SITES = 20
DEFAULT_MAX_AMPLITUDES = 2**24

ENV_PREFIX = "LOCCQSS_"


class Command(Enum):
    ANALYZE = "analyze"
    SUBSETS = "subsets"
    SIMULATE = "simulate"
    VERIFY = "verify"


class OutputFormat(Enum):
    TEXT = "text"
    JSON = "json"
    MSGPACK = "msgpack"


class SecretKind(Enum):
    RANDOM = "random"
    BASIS = "basis"
    FILE = "file"


class Verdict(Enum):
    PASS = "PASS"
    FAIL = "FAIL"


class Direction(Enum):
    # rank(G_B) = k: recovery runs must all succeed
    FORWARD = "forward"
    # rank(G_B) < k: a collision witness must exist
    CONVERSE = "converse"


class ExitCode(IntEnum):
    OK = 0
    FAILURE = 1
    USAGE = 2
    BUDGET = 3
