"""Utility functions for the sosggm project: number formatting and file emission."""

import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Any, Iterable, Mapping, Optional, Sequence

from sosggm.exceptions import OutputError

SCHEMA_VERSION = 1
SIGNIFICANT_DIGITS = 12


def format_real(value: Optional[float]) -> str:
    """
    Format a real at 12 significant digits.

    Args:
        value (Optional[float]): Value to format; None gives an empty cell

    Returns:
        str: Deterministic text with "." as decimal separator
    """
    if value is None:
        return ""
    if not math.isfinite(value):
        return "nan" if math.isnan(value) else ("inf" if value > 0 else "-inf")
    text = f"{value:.{SIGNIFICANT_DIGITS}g}"
    return "0" if text == "-0" else text


def round_real(value: float) -> float:
    """Round a float to 12 significant digits so that JSON output is stable."""
    if value == 0.0 or not math.isfinite(value):
        return value
    return float(format_real(value))


def join_reals(values: Iterable[float]) -> str:
    """Semicolon-joined reals at 12 significant digits."""
    return ";".join(format_real(v) for v in values)


def _normalise(payload: Any) -> Any:
    if isinstance(payload, float):
        return round_real(payload)
    if isinstance(payload, Mapping):
        return {key: _normalise(value) for key, value in payload.items()}
    if isinstance(payload, (list, tuple)):
        return [_normalise(value) for value in payload]
    return payload


def render_json(payload: Mapping[str, Any]) -> str:
    """Serialise a payload with the schema version, rounded reals and sorted keys."""
    document = {"schema": SCHEMA_VERSION, **_normalise(payload)}
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def render_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """Render rows as CSV with a header row and "\\n" line endings; floats are formatted."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_real(c) if isinstance(c, float) or c is None else c for c in row])
    return buffer.getvalue()


def emit(text: str, out_path: Optional[str] = None) -> None:
    """
    Write text to a file, or to stdout when no path is given.

    Args:
        text (str): Document to write
        out_path (Optional[str]): Destination path; "-" or None means stdout

    Raises:
        OutputError: If the destination cannot be written
    """
    if out_path in (None, "-"):
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    path = Path(out_path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as e:
        raise OutputError(f"Cannot write {out_path}: {e}") from e

