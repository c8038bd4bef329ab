# Reporting package
from utils.reporting.schemas import REPORT_MODELS, SCHEMA_VERSION, finite, matrix, vector
from utils.reporting.writers import emit_text, render_csv, render_json, report_schema, write_csv, write_json

__all__ = [
    "REPORT_MODELS",
    "SCHEMA_VERSION",
    "emit_text",
    "finite",
    "matrix",
    "render_csv",
    "render_json",
    "report_schema",
    "vector",
    "write_csv",
    "write_json",
]
