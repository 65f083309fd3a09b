# utils/io_utils.py
import json
import os
from typing import Any, Dict, List, Optional, Sequence, Union

from pydantic import BaseModel

from hochbv.core.exactlinalg import export_coordinate
from hochbv.core.frobenius import FrobeniusAlgebra
from hochbv.core.hochschild import Chain, ChainOperator, Truncation, factors, operator_matrix
from hochbv.logging_config import logger

Reportable = Union[BaseModel, Sequence[BaseModel], Dict[str, Any]]


def _plain(report: Reportable, deterministic: bool) -> Any:
    exclude = {"wall_time"} if deterministic else None
    if isinstance(report, BaseModel):
        return report.model_dump(mode="json", exclude=exclude)
    if isinstance(report, dict):
        return {k: _plain(v, deterministic) for k, v in report.items()}
    if isinstance(report, (list, tuple)):
        return [_plain(r, deterministic) for r in report]
    return report


def report_json(report: Reportable, deterministic: bool = True) -> str:
    """Serialize with sorted keys; wall times are dropped unless asked for."""
    return json.dumps(_plain(report, deterministic), sort_keys=True, indent=2) + "\n"


def write_report(report: Reportable, output_dir: str, filename: str, deterministic: bool = True) -> str:
    os.makedirs(output_dir, exist_ok=True)
    path = os.path.join(output_dir, filename)
    try:
        with open(path, "w") as f:
            f.write(report_json(report, deterministic))
    except OSError as e:
        logger.error(f"Failed to write report {path}: {str(e)}")
        raise
    logger.info(f"Report written to {path}")
    return path


def write_json(data: Dict[str, Any], output_dir: str, filename: str) -> str:
    os.makedirs(output_dir, exist_ok=True)
    path = os.path.join(output_dir, filename)
    with open(path, "w") as f:
        json.dump(data, f, sort_keys=True, indent=2)
        f.write("\n")
    logger.info(f"Written {path}")
    return path


def chain_dump(A: FrobeniusAlgebra, chain: Chain) -> List[Dict[str, Any]]:
    """Chain dump format: one record per term, in deterministic order.

    Each record has the coefficient as 'num/den' text and the words as
    [head, [tail...]] with basis names."""
    records = []
    for key, c in chain.sorted_items():
        records.append(
            {
                "coefficient": A.field.format(c),
                "words": [[A.names[w.head], [A.names[a] for a in w.tail]] for w in factors(key)],
            }
        )
    return records


def export_operator(
    A: FrobeniusAlgebra,
    op: ChainOperator,
    t: Truncation,
    output_dir: str,
    codomain_length: Optional[int] = None,
) -> str:
    """Write ``<op>.mtx`` in the coordinate format."""
    matrix = operator_matrix(op, A, t, codomain_length)
    os.makedirs(output_dir, exist_ok=True)
    path = os.path.join(output_dir, f"{op.name}.mtx")
    with open(path, "w") as f:
        f.write(export_coordinate(matrix))
    logger.info(f"Exported {op.name} ({matrix.rows}x{matrix.cols}, nnz={matrix.nnz}) to {path}")
    return path
