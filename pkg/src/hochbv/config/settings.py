# config/settings.py
import json
import argparse
from typing import Optional

from pydantic_settings import BaseSettings, SettingsConfigDict
from pydantic import field_validator

from hochbv.config.constants import (
    DEFAULT_FIELD,
    DEFAULT_MAX_LENGTH_CAP,
    DEFAULT_OUTPUT_DIR,
    EXPORTABLE_OPERATORS,
    LEVELS,
)


class Settings(BaseSettings):
    max_length: int = DEFAULT_MAX_LENGTH_CAP
    field: str = DEFAULT_FIELD
    output_dir: str = DEFAULT_OUTPUT_DIR
    seed: int = 0
    log_level: str = "info"

    @field_validator("max_length")
    def validate_max_length(cls, v):
        if v < 0:
            raise ValueError("max_length must be non-negative")
        return v

    @field_validator("field")
    def validate_field(cls, v):
        # imported here to keep settings importable without the core package
        from hochbv.core.exactlinalg import parse_field

        parse_field(v)
        return v

    model_config = SettingsConfigDict(env_prefix="HOCHBV_", env_file=".env", extra="ignore")


def load_config(config_path: str) -> dict:
    """Load a JSON document (algebra file or session config)."""
    with open(config_path, "r") as f:
        return json.load(f)


def build_parser(settings: Optional[Settings] = None) -> argparse.ArgumentParser:
    settings = settings or Settings()
    parser = argparse.ArgumentParser(
        prog="hochbv",
        description="Exact Hochschild complex and open Frobenius BV identity engine.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("algebra", type=str, help="Path to the algebra description file (JSON).")
    common.add_argument("--field", type=str, default=None, help="Field override: 'Q' or 'Fp:<p>'.")
    common.add_argument("--max-length", type=int, default=None, help="Word-length window L.")
    common.add_argument("--max-degree", type=int, default=None, help="Optional internal-degree bound.")
    common.add_argument("--out", type=str, default=settings.output_dir, help="Output directory for reports.")
    common.add_argument("--seed", type=int, default=settings.seed, help="Seed for sampled negative controls.")

    verbs = parser.add_subparsers(dest="verb", required=True)

    validate = verbs.add_parser("validate", parents=[common], help="Validate the algebra axioms.")
    validate.add_argument("--level", choices=LEVELS, default="symmetric_open", help="Validation level.")

    homology = verbs.add_parser("homology", parents=[common], help="Homology profile of the truncated complex.")
    homology.add_argument(
        "--operator",
        choices=("B",),
        default=None,
        help="Also report the rank of the map induced on homology by this operator.",
    )

    check = verbs.add_parser("check", parents=[common], help="Check chain-level identities.")
    check.add_argument(
        "--identities",
        type=str,
        default=None,
        help="Comma-separated identity ids (default: the full catalog the algebra supports).",
    )
    check.add_argument(
        "--codomain-length",
        type=int,
        default=None,
        help="Report needs-larger-window when an operator output is longer than this.",
    )

    verbs.add_parser("derive-coproduct", parents=[common], help="Derive the coproduct of a closed algebra.")

    export = verbs.add_parser("export", parents=[common], help="Export an operator matrix.")
    export.add_argument("--op", choices=EXPORTABLE_OPERATORS, required=True, help="Operator to export.")
    export.add_argument(
        "--codomain-length",
        type=int,
        default=None,
        help="Word-length window of the codomain (default: the operator's own growth).",
    )
    return parser


def parse_arguments(argv=None):
    """Parse command-line arguments for the engine."""
    return build_parser().parse_args(argv)
