"""MPS reader for the LP subset the workbench exports.

Supported: a single N objective row, L constraint rows, COLUMNS/RHS with
one or two (name, value) pairs per line, and LO/UP/FX/FR/MI/PL bounds.
Variables without bound entries default to [0, +inf) per MPS convention.
Whitespace-separated free format; fixed-format files parse too since
their fields are whitespace-delimited.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["MpsFormatError", "LpProblem", "parse_mps"]


class MpsFormatError(ValueError):
    """The MPS file cannot be interpreted; the message names the line."""


@dataclass(frozen=True)
class LpProblem:
    name: str
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    row_names: list[str]
    col_names: list[str]


def _pairs(fields: list[str], lineno: int):
    if len(fields) % 2 != 0:
        raise MpsFormatError(f"line {lineno}: expected name/value pairs, got {fields}")
    for i in range(0, len(fields), 2):
        try:
            yield fields[i], float(fields[i + 1])
        except ValueError as exc:
            raise MpsFormatError(f"line {lineno}: bad numeric value {fields[i + 1]!r}") from exc


def parse_mps(path) -> LpProblem:
    name = ""
    section = None
    obj_row: str | None = None
    row_order: list[str] = []
    row_kind: dict[str, str] = {}
    col_order: list[str] = []
    col_entries: dict[str, dict[str, float]] = {}
    rhs: dict[str, float] = {}
    lo: dict[str, float] = {}
    up: dict[str, float] = {}

    with open(path, "r", encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, start=1):
            if not raw.strip() or raw.lstrip().startswith("*"):
                continue
            indented = raw[0] in " \t"
            fields = raw.split()
            if not indented:
                head = fields[0].upper()
                if head == "NAME":
                    name = fields[1] if len(fields) > 1 else ""
                    continue
                if head == "ENDATA":
                    section = "ENDATA"
                    break
                if head in ("ROWS", "COLUMNS", "RHS", "BOUNDS"):
                    section = head
                    continue
                if head in ("RANGES", "OBJSENSE", "SOS"):
                    raise MpsFormatError(f"line {lineno}: unsupported section {head}")
                raise MpsFormatError(f"line {lineno}: unknown section {head!r}")

            if section == "ROWS":
                if len(fields) != 2:
                    raise MpsFormatError(f"line {lineno}: ROWS lines are 'type name'")
                kind, row = fields[0].upper(), fields[1]
                if kind == "N":
                    if obj_row is not None:
                        raise MpsFormatError(f"line {lineno}: second objective row {row!r}")
                    obj_row = row
                elif kind == "L":
                    row_order.append(row)
                    row_kind[row] = kind
                else:
                    raise MpsFormatError(f"line {lineno}: unsupported row type {kind!r}")
            elif section == "COLUMNS":
                var = fields[0]
                if var not in col_entries:
                    col_entries[var] = {}
                    col_order.append(var)
                for row, value in _pairs(fields[1:], lineno):
                    if row != obj_row and row not in row_kind:
                        raise MpsFormatError(f"line {lineno}: unknown row {row!r}")
                    col_entries[var][row] = value
            elif section == "RHS":
                for row, value in _pairs(fields[1:], lineno):
                    if row != obj_row and row not in row_kind:
                        raise MpsFormatError(f"line {lineno}: unknown row {row!r}")
                    rhs[row] = value
            elif section == "BOUNDS":
                kind = fields[0].upper()
                if kind in ("LO", "UP", "FX"):
                    if len(fields) != 4:
                        raise MpsFormatError(f"line {lineno}: {kind} bound needs a value")
                    var, value = fields[2], float(fields[3])
                elif kind in ("FR", "MI", "PL"):
                    if len(fields) != 3:
                        raise MpsFormatError(f"line {lineno}: {kind} bound takes no value")
                    var, value = fields[2], 0.0
                else:
                    raise MpsFormatError(f"line {lineno}: unsupported bound type {kind!r}")
                if var not in col_entries:
                    raise MpsFormatError(f"line {lineno}: bound for unknown column {var!r}")
                if kind == "LO":
                    lo[var] = value
                elif kind == "UP":
                    up[var] = value
                elif kind == "FX":
                    lo[var] = up[var] = value
                elif kind == "FR":
                    lo[var] = -np.inf
                    up[var] = np.inf
                elif kind == "MI":
                    lo[var] = -np.inf
                elif kind == "PL":
                    up[var] = np.inf
            elif section is None:
                raise MpsFormatError(f"line {lineno}: data before any section")

    if section != "ENDATA":
        raise MpsFormatError("missing ENDATA")
    if obj_row is None:
        raise MpsFormatError("no objective (N) row declared")

    m, n = len(row_order), len(col_order)
    a = np.zeros((m, n))
    c = np.zeros(n)
    row_index = {r: i for i, r in enumerate(row_order)}
    for j, var in enumerate(col_order):
        for row, value in col_entries[var].items():
            if row == obj_row:
                c[j] = value
            else:
                a[row_index[row], j] = value
    b = np.array([rhs.get(r, 0.0) for r in row_order])
    lower = np.array([lo.get(v, 0.0) for v in col_order])
    upper = np.array([up.get(v, np.inf) for v in col_order])
    if np.any(lower > upper):
        raise MpsFormatError("crossed bounds: lower exceeds upper for some column")
    return LpProblem(
        name=name,
        a=a,
        b=b,
        c=c,
        lower=lower,
        upper=upper,
        row_names=row_order,
        col_names=col_order,
    )
