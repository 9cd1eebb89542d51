"""Report writers for JSON and CSV output; without a path they write to stdout."""

import csv
import io
import logging
import sys
import threading
from pathlib import Path
from typing import Any, Optional

from ..schemas import RunReport
from .base import ReportDevice, RowDevice
from .utility import flatten, format_number

logger = logging.getLogger(__name__)


def _emit(text: str, path: Optional[Path]) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    logger.info(f"report written to {path}")


class JsonWriter(ReportDevice):
    def __init__(self, path: Optional[Path] = None):
        self.path = path

    def deliver_report(self, report: RunReport) -> None:
        _emit(report.model_dump_json(indent=2, exclude_none=True) + "\n", self.path)


class CsvWriter(ReportDevice):
    def __init__(self, path: Optional[Path] = None):
        self.path = path

    def deliver_report(self, report: RunReport) -> None:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["key", "value"])
        writer.writerows(flatten(report.model_dump(mode="json", exclude_none=True)))
        _emit(buffer.getvalue(), self.path)


class SweepTable(RowDevice):
    """Append-only CSV of sweep rows keyed by d; rows already on disk are reported as completed."""

    def __init__(self, path: Optional[Path], columns: list[str]):
        self.path = path
        self.columns = columns
        self._lock = threading.Lock()
        if path is not None and path.is_file() and path.stat().st_size:
            with path.open(encoding="utf-8", newline="") as handle:
                header = next(csv.reader(handle), None)
            if header:
                self.columns = header
        elif path is None:
            self._write_header(sys.stdout)

    def completed(self) -> set[int]:
        if self.path is None or not self.path.is_file():
            return set()
        with self.path.open(encoding="utf-8", newline="") as handle:
            return {int(row["d"]) for row in csv.DictReader(handle) if row.get("d")}

    def _write_header(self, handle: Any) -> None:
        csv.writer(handle, lineterminator="\n").writerow(self.columns)

    def deliver_row(self, row: dict[str, Any]) -> None:
        values = {column: format_number(row.get(column)) for column in self.columns}
        with self._lock:
            if self.path is None:
                csv.DictWriter(sys.stdout, self.columns, lineterminator="\n").writerow(values)
                return
            fresh = not self.path.is_file() or not self.path.stat().st_size
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a", encoding="utf-8", newline="") as handle:
                if fresh:
                    self._write_header(handle)
                csv.DictWriter(handle, self.columns, lineterminator="\n").writerow(values)
