# main.py
import sys
import time
from typing import List, Optional

from hochbv.config.constants import (
    DERIVED_ALGEBRA_FILE,
    EXIT_CONFIG_ERROR,
    EXIT_IDENTITY_FAILED,
    EXIT_NEEDS_LARGER_WINDOW,
    EXIT_OK,
    HOMOLOGY_REPORT_FILE,
    IDENTITY_REPORT_FILE,
    PROPOSITIONS_REPORT_FILE,
    STATUS_FAIL,
    STATUS_NEEDS_LARGER_WINDOW,
    VALIDATION_REPORT_FILE,
)
from hochbv.config.settings import parse_arguments
from hochbv.core.exactlinalg import check_characteristic
from hochbv.core.frobenius import algebra_to_dict, check_propositions, validate
from hochbv.core.hochschild import homology_profile, induced_ranks
from hochbv.core.session import Session, registry
from hochbv.exceptions import BrokenComplexError, HochbvError, TruncationOverflow
from hochbv.logging_config import logger
from hochbv.utils.io_utils import export_operator, write_json, write_report


def _session(args) -> Session:
    identities = [name.strip() for name in args.identities.split(",") if name.strip()] if getattr(args, "identities", None) else None
    session = registry.open(
        args.algebra,
        field=args.field,
        max_length=args.max_length,
        max_degree=args.max_degree,
        identities=identities,
        output_dir=args.out,
        seed=args.seed,
    )
    check_characteristic(session.algebra.field, session.truncation.max_length)
    return session


def cli_validate(args) -> int:
    algebra = registry.algebra(args.algebra, args.field)
    report = validate(algebra, args.level)
    write_report(report, args.out, VALIDATION_REPORT_FILE)
    if report.passed and args.level != "dga":
        write_report(check_propositions(algebra), args.out, PROPOSITIONS_REPORT_FILE)
    for result in report.results:
        if not result.passed:
            logger.info(f"{result.axiom}: fails at {result.counterexample}")
    return EXIT_OK if report.passed else EXIT_IDENTITY_FAILED


def cli_homology(args) -> int:
    session = _session(args)
    profile = homology_profile(session.algebra, session.truncation)
    if args.operator:
        op = session.operator(args.operator)
        profile.induced = induced_ranks(session.algebra, session.truncation, op, op.degree, 1)
    write_report(profile, session.config.output_dir, HOMOLOGY_REPORT_FILE)
    return EXIT_OK


def cli_check(args) -> int:
    session = _session(args)
    start = time.perf_counter()
    reports = session.check(session.config.identities, args.codomain_length)
    logger.info(f"Checked {len(reports)} identities in {time.perf_counter() - start:.3f}s")
    write_report(reports, session.config.output_dir, IDENTITY_REPORT_FILE)
    statuses = {r.status for r in reports}
    if STATUS_FAIL in statuses:
        return EXIT_IDENTITY_FAILED
    if STATUS_NEEDS_LARGER_WINDOW in statuses:
        return EXIT_NEEDS_LARGER_WINDOW
    return EXIT_OK


def cli_derive_coproduct(args) -> int:
    algebra = registry.algebra(args.algebra, args.field)
    write_json(algebra_to_dict(algebra), args.out, DERIVED_ALGEBRA_FILE)
    return EXIT_OK


def cli_export(args) -> int:
    session = _session(args)
    export_operator(session.algebra, session.operator(args.op), session.truncation, session.config.output_dir, args.codomain_length)
    return EXIT_OK


VERBS = {
    "validate": cli_validate,
    "homology": cli_homology,
    "check": cli_check,
    "derive-coproduct": cli_derive_coproduct,
    "export": cli_export,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = parse_arguments(argv)
    try:
        return VERBS[args.verb](args)
    except TruncationOverflow as e:
        logger.error(str(e))
        return EXIT_NEEDS_LARGER_WINDOW
    except BrokenComplexError as e:
        logger.error(str(e))
        return EXIT_IDENTITY_FAILED
    except HochbvError as e:
        logger.error(str(e))
        return EXIT_CONFIG_ERROR


if __name__ == "__main__":
    sys.exit(main())
