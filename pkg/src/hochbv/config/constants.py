# config/constants.py

# Exit-code contract of the command-line front end
EXIT_OK = 0
EXIT_IDENTITY_FAILED = 1
EXIT_CONFIG_ERROR = 2
EXIT_NEEDS_LARGER_WINDOW = 3

# Validation levels, each including the previous ones
LEVELS = ("dga", "open", "symmetric_open", "commutative")

LEVEL_AXIOMS = {
    "dga": (
        "unitality",
        "product_degree",
        "differential_degree",
        "associativity",
        "d_squared",
        "d_derivation",
    ),
    "open": (
        "coproduct_degree",
        "coassociativity",
        "coproduct_chain_map",
        "frobenius_left_module",
        "frobenius_right_module",
    ),
    "symmetric_open": ("symmetry",),
    "commutative": ("commutativity",),
}

PROPOSITION_ITEMS = (
    "cocommutativity",
    "center",
    "counit_left",
    "counit_unit",
    "counit_unit_twisted",
    "pairing_round_trip",
)

# Report status values
STATUS_PASS = "pass"
STATUS_FAIL = "fail"
STATUS_NEEDS_LARGER_WINDOW = "needs-larger-window"

HOMOLOGY_EXACT = "exact"
HOMOLOGY_TRUNCATED = "truncated approximation"

DEFAULT_MAX_LENGTH_CAP = 6
DEFAULT_WINDOW_LENGTH = 3
DEFAULT_FIELD = "Q"
DEFAULT_OUTPUT_DIR = "reports"

VALIDATION_REPORT_FILE = "validation.json"
PROPOSITIONS_REPORT_FILE = "propositions.json"
HOMOLOGY_REPORT_FILE = "homology.json"
IDENTITY_REPORT_FILE = "identities.json"
DERIVED_ALGEBRA_FILE = "derived_algebra.json"

# Operators available to `export` and `homology --operator`
EXPORTABLE_OPERATORS = ("D", "B", "theta", "bullet", "h", "K")
