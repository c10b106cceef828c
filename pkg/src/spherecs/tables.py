"""Canonical tabular output: deterministic CSV with 12 significant digits.

Every file the package emits goes through format_cell, so identical inputs
produce byte-identical artifacts regardless of locale or worker count.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import StateVector

__all__ = ["Table", "format_cell", "merge_tables", "state_csv"]

UNDEFINED = "undefined"


def format_cell(value) -> str:
    if value is None:
        return UNDEFINED
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    x = float(value)
    if x == 0.0:
        x = 0.0  # fold -0.0 into 0
    return f"{x:.12g}"


@dataclass(frozen=True)
class Table:
    columns: tuple[str, ...]
    rows: tuple[tuple, ...]

    def __post_init__(self):
        width = len(self.columns)
        for row in self.rows:
            if len(row) != width:
                raise ValueError(
                    f"row of width {len(row)} in a table of {width} columns"
                )

    def column(self, name: str) -> list:
        idx = self.columns.index(name)
        return [row[idx] for row in self.rows]

    def select(self, names: list[str], rename: list[str] | None = None) -> "Table":
        indices = [self.columns.index(n) for n in names]
        columns = tuple(rename) if rename is not None else tuple(names)
        rows = tuple(tuple(row[i] for i in indices) for row in self.rows)
        return Table(columns=columns, rows=rows)

    def render_csv(self) -> str:
        lines = [",".join(self.columns)]
        for row in self.rows:
            lines.append(",".join(format_cell(v) for v in row))
        return "\n".join(lines) + "\n"


def merge_tables(base: Table, others: list[tuple[Table, str, str]]) -> Table:
    """Append single columns from other tables sharing the same first column."""
    columns = list(base.columns)
    rows = [list(row) for row in base.rows]
    for table, source, label in others:
        extra = table.column(source)
        if len(extra) != len(rows):
            raise ValueError("tables to merge have different row counts")
        columns.append(label)
        for row, v in zip(rows, extra):
            row.append(v)
    return Table(columns=tuple(columns), rows=tuple(tuple(r) for r in rows))


def state_csv(kind: str, mu: complex, m: int, state: StateVector) -> str:
    """Amplitude dump: metadata comment, then n, Re, Im, probability rows."""
    params = state.params
    meta = ", ".join(
        [
            f"kind={kind}",
            f"N={params.cutoff}",
            f"lambda={format_cell(params.curvature)}",
            f"mu_re={format_cell(mu.real)}",
            f"mu_im={format_cell(mu.imag)}",
            f"m={m}",
        ]
    )
    lines = [f"# {meta}", "n,amplitude_re,amplitude_im,probability"]
    for n, amp in enumerate(state.amplitudes):
        prob = abs(amp) ** 2
        lines.append(
            ",".join(
                [str(n), format_cell(amp.real), format_cell(amp.imag), format_cell(prob)]
            )
        )
    return "\n".join(lines) + "\n"
