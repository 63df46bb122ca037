"""Self-describing CSV tables.

Header lines start with ``#`` and carry ``key: value`` metadata (code
version, parameters, seed, column units).  The body is a plain
comma-separated table with a single column-name row.  Floats are written
with 17 significant digits so identical inputs give byte-identical files.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__

__all__ = ["Table", "write_csv", "read_csv", "format_value"]


@dataclass
class Table:
    name: str
    columns: list[str]
    rows: list[tuple]
    meta: dict = field(default_factory=dict)
    units: dict = field(default_factory=dict)

    def column(self, name: str) -> np.ndarray:
        i = self.columns.index(name)
        return np.array([r[i] for r in self.rows])


def format_value(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def to_csv_text(table: Table) -> str:
    buf = io.StringIO()
    buf.write(f"# table: {table.name}\n")
    buf.write(f"# code_version: iontrap_revivals {__version__}\n")
    for k, v in table.meta.items():
        buf.write(f"# {k}: {format_value(v)}\n")
    for col in table.columns:
        buf.write(f"# unit[{col}]: {table.units.get(col, 'dimensionless')}\n")
    buf.write(",".join(table.columns) + "\n")
    for row in table.rows:
        buf.write(",".join(format_value(v) for v in row) + "\n")
    return buf.getvalue()


def write_csv(table: Table, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(to_csv_text(table))
    return path


def read_csv(path) -> tuple[dict, list[str], np.ndarray]:
    """Return ``(meta, columns, data)``; non-numeric cells become NaN."""
    meta, lines = {}, []
    for line in Path(path).read_text().splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition(":")
            meta[key.strip()] = value.strip()
        elif line:
            lines.append(line)
    columns = lines[0].split(",")
    data = np.genfromtxt(io.StringIO("\n".join(lines[1:])), delimiter=",", ndmin=2)
    return meta, columns, data
