"""
Report Writers - deterministic JSON and CSV emission to a file or stdout
"""

import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Iterable, Optional, Sequence

from pydantic import BaseModel, ValidationError

from utils.errors import NumericalFailure, PreconditionError
from utils.reporting.schemas import REPORT_MODELS

logger = logging.getLogger(__name__)

CSV_FLOAT_FORMAT = "%.12g"


def emit_text(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8", newline="")
        logger.info("✅ wrote %s", output)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


def render_json(report: BaseModel) -> str:
    """
    Serialize a report after validating it against its own schema.

    Raises:
        NumericalFailure: If the document does not validate, e.g. a non-finite required value
    """
    text = report.model_dump_json(indent=2) + "\n"
    try:
        type(report).model_validate_json(text)
    except ValidationError as e:
        raise NumericalFailure(f"{type(report).__name__} does not validate: {e.errors()[0]['msg']}") from e
    return text


def write_json(report: BaseModel, output: Optional[str] = None) -> str:
    text = render_json(report)
    emit_text(text, output)
    return text


def _cell(value) -> str:
    if isinstance(value, bool) or isinstance(value, int) or isinstance(value, str):
        return str(value)
    return CSV_FLOAT_FORMAT % float(value)


def render_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        if len(row) != len(header):
            raise PreconditionError(f"row has {len(row)} cells, header has {len(header)}")
        writer.writerow([_cell(value) for value in row])
    return buffer.getvalue()


def write_csv(header: Sequence[str], rows: Iterable[Sequence], output: Optional[str] = None) -> str:
    text = render_csv(header, rows)
    emit_text(text, output)
    return text


def report_schema(name: str) -> str:
    """JSON schema of a named report, keys sorted for stable output."""
    if name not in REPORT_MODELS:
        raise PreconditionError(f"unknown report '{name}', expected one of {sorted(REPORT_MODELS)}")
    return json.dumps(REPORT_MODELS[name].model_json_schema(), indent=2, sort_keys=True) + "\n"
