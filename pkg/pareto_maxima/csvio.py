# pareto_maxima/csvio.py
from __future__ import annotations

import csv
import io
import math
import sys
import time
from dataclasses import dataclass, field
from typing import Any, List, Optional, Sequence, Tuple

from .errors import DomainError, OutputError
from .logutil import log

STDOUT = "-"


def format_cell(v: Any) -> str:
    """repr() for floats so values survive a round trip; blank for None."""
    if v is None:
        return ""
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        return repr(v)
    return str(v)


@dataclass
class CsvTable:
    """
    Self-describing CSV: `#` comment block, a header row, then data rows.

    The only line that changes between identical runs is the `# generated`
    timestamp.
    """

    columns: Tuple[str, ...]
    comments: List[str] = field(default_factory=list)
    rows: List[Tuple[Any, ...]] = field(default_factory=list)

    def comment(self, text: str) -> None:
        for line in str(text).splitlines() or [""]:
            self.comments.append(line)

    def add(self, *values: Any) -> None:
        if len(values) != len(self.columns):
            raise DomainError(f"row has {len(values)} cells, table has {len(self.columns)} columns")
        self.rows.append(tuple(values))

    def extend(self, rows: Sequence[Sequence[Any]]) -> None:
        for r in rows:
            self.add(*r)

    def column(self, name: str) -> List[Any]:
        j = self.columns.index(name)
        return [r[j] for r in self.rows]

    def render(self, timestamp: bool = True) -> str:
        buf = io.StringIO()
        if timestamp:
            buf.write(f"# generated {time.strftime('%Y-%m-%dT%H:%M:%S%z')}\n")
        for c in self.comments:
            buf.write(f"# {c}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for r in self.rows:
            w.writerow([format_cell(v) for v in r])
        return buf.getvalue()

    def write(self, path: Optional[str] = None, timestamp: bool = True) -> str:
        text = self.render(timestamp=timestamp)
        if path is None or path == STDOUT:
            sys.stdout.write(text)
            sys.stdout.flush()
            return STDOUT
        try:
            with open(path, "w", newline="", encoding="utf-8") as f:
                f.write(text)
        except OSError as e:
            raise OutputError(f"cannot write CSV to {path}: {e}") from e
        log("csv", f"wrote {len(self.rows)} rows to {path}")
        return path


def read_table(path: str) -> Tuple[List[str], List[str], List[List[str]]]:
    """(comments, header, rows) of a file written by CsvTable.write."""
    try:
        with open(path, newline="", encoding="utf-8") as f:
            lines = f.read().splitlines()
    except OSError as e:
        raise OutputError(f"cannot read CSV from {path}: {e}") from e
    comments = [ln[2:] if ln.startswith("# ") else ln[1:] for ln in lines if ln.startswith("#")]
    body = [ln for ln in lines if not ln.startswith("#")]
    parsed = list(csv.reader(body))
    if not parsed:
        return comments, [], []
    return comments, parsed[0], parsed[1:]


__all__ = ["CsvTable", "format_cell", "read_table", "STDOUT"]
