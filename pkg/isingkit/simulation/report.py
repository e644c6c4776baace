# -*- coding: utf-8 -*-
"""CSV output for simulation records and cell summaries. Floats use repr, so values round-trip."""

import csv
import io
from pathlib import Path
from typing import Iterable, List, Optional, Sequence

from isingkit.common.errors import OutputError
from isingkit.common.logger import get_logger
from isingkit.simulation.lab import CellSummary, ErrorRecord

log = get_logger("simulation.report")

RECORD_HEADER = ["k", "sigma", "rep", "zbar_log", "z_log", "diff", "ratio", "theta0_bar", "theta1_bar"]

SUMMARY_HEADER = [
    "k",
    "sigma",
    "n",
    "mean_diff",
    "std_diff",
    "mean_abs_ratio_error",
    "median_abs_ratio_error",
]


def _cell(value) -> str:
    return repr(float(value)) if isinstance(value, float) else str(value)


def _render(header: Sequence[str], rows: Iterable[dict]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(row[name]) for name in header])
    return buffer.getvalue()


def records_csv(records: Iterable[ErrorRecord]) -> str:
    """
    Render error records as CSV text.

    Args:
        records: records in the order they should appear.

    Returns:
        Header line plus one line per record, newline terminated.
    """
    return _render(RECORD_HEADER, (r.model_dump() for r in records))


def summary_csv(summaries: Iterable[CellSummary]) -> str:
    return _render(SUMMARY_HEADER, (s.model_dump() for s in summaries))


def _write(text: str, path: Optional[str]) -> None:
    if path is None:
        return
    try:
        target = Path(path)
        target.write_text(text, encoding="utf-8", newline="")
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc}") from exc
    log.info("wrote {}", path)


def write_records_csv(records: List[ErrorRecord], path: Optional[str]) -> str:
    """Render records and write them to `path` when given. Returns the CSV text.

    Raises:
        OutputError: the file cannot be written.
    """
    text = records_csv(records)
    _write(text, path)
    return text


def write_summary_csv(summaries: List[CellSummary], path: Optional[str]) -> str:
    """
    Render cell summaries and write them to `path` when given.

    Raises:
        OutputError: the file cannot be written.
    """
    text = summary_csv(summaries)
    _write(text, path)
    return text


def read_records_csv(text: str) -> List[ErrorRecord]:
    """Parse records written by records_csv."""
    rows = csv.DictReader(io.StringIO(text))
    return [
        ErrorRecord(
            k=int(row["k"]),
            sigma=float(row["sigma"]),
            rep=int(row["rep"]),
            zbar_log=float(row["zbar_log"]),
            z_log=float(row["z_log"]),
            diff=float(row["diff"]),
            ratio=float(row["ratio"]),
            theta0_bar=float(row["theta0_bar"]),
            theta1_bar=float(row["theta1_bar"]),
        )
        for row in rows
    ]
