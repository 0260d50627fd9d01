"""Result tables and their CSV / JSON serializations."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

CSV_FLOAT = "{:.11e}"


@dataclass
class ResultTable:
    columns: tuple
    rows: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.columns = tuple(self.columns)
        self.rows = [tuple(float(x) for x in r) for r in self.rows]
        for r in self.rows:
            if len(r) != len(self.columns):
                raise ValueError(f"row has {len(r)} values for {len(self.columns)} columns")

    def column(self, name):
        i = self.columns.index(name)
        return [r[i] for r in self.rows]


def write_output(table: ResultTable, fmt: str = "csv") -> bytes:
    """Serialize deterministically.

    CSV: ``# key=value`` provenance lines, a header row, then values with 12
    significant digits.  JSON: object with ``columns``, ``rows`` and ``meta``.
    """
    if fmt == "csv":
        buf = io.StringIO()
        for k in sorted(table.meta):
            buf.write(f"# {k}={table.meta[k]}\n")
        buf.write(",".join(table.columns) + "\n")
        for r in table.rows:
            buf.write(",".join(CSV_FLOAT.format(x) for x in r) + "\n")
        return buf.getvalue().encode()
    if fmt == "json":
        doc = {"columns": list(table.columns), "rows": [list(r) for r in table.rows],
               "meta": {k: table.meta[k] for k in sorted(table.meta)}}
        return (json.dumps(doc, indent=1) + "\n").encode()
    raise ValueError(f"unknown output format {fmt!r}")


def read_output(data: bytes, fmt: str = "csv") -> ResultTable:
    text = data.decode()
    if fmt == "json":
        doc = json.loads(text)
        return ResultTable(doc["columns"], doc["rows"], doc["meta"])
    meta = {}
    body = []
    for line in text.splitlines():
        if line.startswith("# "):
            k, _, v = line[2:].partition("=")
            meta[k] = v
        else:
            body.append(line)
    reader = csv.reader(body)
    columns = next(reader)
    return ResultTable(columns, [[float(x) for x in r] for r in reader if r], meta)
