"""Render module for spin_chebyshev.

Command output is collected in an OutputRecord and written as CSV or
JSON. Floats are printed with 17 significant digits and keys are sorted,
so identical inputs give identical bytes.
"""
import csv
import io
import json
from dataclasses import dataclass, field
from numbers import Integral, Real
from typing import Any, Dict, List

FORMAT_VERSION = "1"
SIGNIFICANT_DIGITS = 17


def format_value(value: Any) -> str:
    """Return a fixed textual form of a scalar."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Integral):
        return str(int(value))
    if isinstance(value, Real):
        return format(float(value), f".{SIGNIFICANT_DIGITS}g")
    return str(value)


@dataclass
class OutputRecord:
    """The result of one command: parameters, a table of rows and summary values."""

    command: str
    parameters: Dict[str, Any] = field(default_factory=dict)
    columns: List[str] = field(default_factory=list)
    rows: List[List[Any]] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)

    def add_row(self, *values):
        """Append a row; its length must match the columns."""
        if len(values) != len(self.columns):
            raise ValueError(
                f"row of length {len(values)} for {len(self.columns)} columns"
            )
        self.rows.append(list(values))

    def to_json(self) -> str:
        """Return the record as JSON with every number in fixed 17-digit text."""
        document = {
            "format_version": FORMAT_VERSION,
            "command": self.command,
            "parameters": {k: format_value(v) for k, v in self.parameters.items()},
            "columns": list(self.columns),
            "rows": [[format_value(v) for v in row] for row in self.rows],
            "summary": {k: format_value(v) for k, v in self.summary.items()},
        }
        return json.dumps(document, sort_keys=True, indent=2) + "\n"

    def to_csv(self) -> str:
        """Return the record as CSV.

        Comment lines carry the format version, command and parameters;
        summary values follow the table as '# key=value' lines.
        """
        buffer = io.StringIO()
        buffer.write(f"# format_version={FORMAT_VERSION}\n")
        buffer.write(f"# command={self.command}\n")
        for key in sorted(self.parameters):
            buffer.write(f"# {key}={format_value(self.parameters[key])}\n")
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([format_value(v) for v in row])
        for key in sorted(self.summary):
            buffer.write(f"# {key}={format_value(self.summary[key])}\n")
        return buffer.getvalue()

    def render(self, fmt: str) -> str:
        """Return the record in the named format."""
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        raise ValueError(f"Invalid format {fmt!r}. Choose from ['csv', 'json'].")
