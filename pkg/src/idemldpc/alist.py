"""Non-binary alist and dense CSV export of parity-check matrices.

alist layout (1-based indices, MacKay order)::

    N M                       columns, rows
    max_col_degree max_row_degree
    col degrees (N numbers)
    row degrees (M numbers)
    N lines: for each column, "row exponent" pairs
    M lines: for each row, "column exponent" pairs

``exponent`` is the beta-exponent of the nonzero entry, so 0 means the
entry is 1.  Zero entries never appear.
"""

from __future__ import annotations

import io

import numpy as np

from .construct import ParityCheckMatrix
from .field import ZERO, FieldTables


def _pairs(idx: np.ndarray, exps: np.ndarray) -> str:
    return " ".join(f"{i + 1} {e}" for i, e in zip(idx, exps))


def write_alist(H: ParityCheckMatrix, out: io.TextIOBase) -> None:
    e = H.entries
    rows, cols = e.shape
    nz = e != ZERO
    col_deg = nz.sum(axis=0)
    row_deg = nz.sum(axis=1)
    out.write(f"{cols} {rows}\n")
    out.write(f"{col_deg.max()} {row_deg.max()}\n")
    out.write(" ".join(map(str, col_deg)) + "\n")
    out.write(" ".join(map(str, row_deg)) + "\n")
    for p in range(cols):
        r = np.flatnonzero(nz[:, p])
        out.write(_pairs(r, e[r, p]) + "\n")
    for i in range(rows):
        c = np.flatnonzero(nz[i])
        out.write(_pairs(c, e[i, c]) + "\n")


def read_alist(text: str, field: FieldTables) -> ParityCheckMatrix:
    """Parse the column section of a non-binary alist; the row section is cross-checked."""
    lines = [ln.split() for ln in text.strip().splitlines()]
    cols, rows = map(int, lines[0])
    entries = np.full((rows, cols), ZERO, dtype=np.int64)
    for p, ln in enumerate(lines[4 : 4 + cols]):
        vals = list(map(int, ln))
        for r, ex in zip(vals[::2], vals[1::2]):
            entries[r - 1, p] = ex
    for i, ln in enumerate(lines[4 + cols : 4 + cols + rows]):
        vals = list(map(int, ln))
        for c, ex in zip(vals[::2], vals[1::2]):
            if entries[i, c - 1] != ex:
                raise ValueError(f"row and column sections disagree at ({i + 1}, {c})")
    entries.setflags(write=False)
    return ParityCheckMatrix(entries, field)


def write_dense_csv(H: ParityCheckMatrix, out: io.TextIOBase) -> None:
    """One line per row; entries are beta-exponents, ``-`` for zero."""
    for row in H.entries:
        out.write(",".join("-" if v == ZERO else str(v) for v in row) + "\n")
