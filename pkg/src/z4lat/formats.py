"""Text formats for codes, lattice bases and Gram matrices.

Code files come in two shapes, both starting with a two-integer header:

* grid: ``n k1`` then ``k1`` rows of ``n - k1`` digits (the identity block is implicit)
* full: ``rows cols`` then ``rows`` rows of ``cols`` digits

Digits are 0..3; spaces inside a row are ignored.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from z4lat import tables
from z4lat.lattice import LatticeBasis
from z4lat.z4 import NotSelfDual, Z4Code, complete_from_upper


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int | None = None, source: str | None = None):
        self.line = line
        self.column = column
        self.source = source
        where = f"{source or '<input>'}:{line}" + (f":{column}" if column is not None else "")
        super().__init__(f"{where}: {message}")


def _content_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        if body.strip():
            out.append((lineno, body))
    return out


def _header(lines, source) -> tuple[int, int]:
    if not lines:
        raise ParseError("empty input", 1, source=source)
    lineno, body = lines[0]
    toks = body.split()
    if len(toks) != 2 or not all(t.isdigit() for t in toks):
        raise ParseError("header must be two non-negative integers", lineno, 1, source)
    return int(toks[0]), int(toks[1])


def _digit_row(lineno: int, body: str, width: int, source) -> list[int]:
    row = []
    for col, ch in enumerate(body, start=1):
        if ch.isspace():
            continue
        if ch not in "0123":
            raise ParseError(f"unexpected character {ch!r} (digits 0..3 expected)", lineno, col, source)
        row.append(int(ch))
    if len(row) != width:
        raise ParseError(f"expected {width} digits, found {len(row)}", lineno, None, source)
    return row


def parse_code(text: str, name: str | None = None, source: str | None = None) -> Z4Code:
    """Parse either code format and return the (verified self-dual) code."""
    lines = _content_lines(text)
    a, b = _header(lines, source)
    rows = lines[1:]
    widths = {len(body.replace(" ", "").replace("\t", "")) for _, body in rows}
    if len(rows) == b and widths <= {a - b} and a >= b:
        grid = [_digit_row(ln, body, a - b, source) for ln, body in rows]
        M = np.array(grid, dtype=np.int64).reshape(b, a - b)
        return complete_from_upper(a, M, name=name)
    if len(rows) == a and widths <= {b}:
        G = np.array([_digit_row(ln, body, b, source) for ln, body in rows], dtype=np.int64)
        C = Z4Code(G.reshape(a, b), n=b, name=name)
        if not C.is_self_dual():
            raise NotSelfDual(f"{source or name or 'code'} is not self-dual")
        return C
    # report against the grid reading, the common case
    want_rows, want_width = b, a - b
    for i, (ln, body) in enumerate(rows):
        if i >= want_rows:
            raise ParseError(f"too many rows: header promises {want_rows}", ln, None, source)
        _digit_row(ln, body, want_width, source)
    last = rows[-1][0] if rows else lines[0][0]
    raise ParseError(f"expected {want_rows} rows, found {len(rows)}", last, None, source)


def load_code(ref: str | Path) -> Z4Code:
    """A builtin code by name (``C26`` ... ``C45``) or a code file."""
    if isinstance(ref, str) and ref in tables.BUILTIN_CODES:
        return tables.builtin_code(ref)
    path = Path(ref)
    if not path.exists():
        raise FileNotFoundError(f"{ref} is neither a builtin code ({', '.join(tables.BUILTIN_CODES)}) nor a file")
    return parse_code(path.read_text(encoding="utf-8"), name=path.stem, source=str(path))


def format_code(C: Z4Code) -> str:
    """Full format (the grid format needs coordinates already in standard position)."""
    G = C.generator_matrix
    rows = ["".join(str(int(v)) for v in row) for row in G]
    return "\n".join([f"{len(G)} {C.n}", *rows]) + "\n"


def format_matrix(M) -> str:
    M = np.asarray(M)
    return "\n".join([str(M.shape[0])] + [" ".join(str(int(v)) for v in row) for row in M]) + "\n"


def format_lattice(L: LatticeBasis) -> str:
    return format_matrix(L.M)


def parse_lattice(text: str, source: str | None = None) -> LatticeBasis:
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty input", 1, source=source)
    ln, body = lines[0]
    if not body.strip().isdigit():
        raise ParseError("header must be the dimension", ln, 1, source)
    n = int(body)
    if len(lines) - 1 != n:
        raise ParseError(f"expected {n} rows, found {len(lines) - 1}", lines[-1][0], None, source)
    rows = []
    for ln, body in lines[1:]:
        try:
            row = [int(tok) for tok in body.split()]
        except ValueError:
            raise ParseError("non-integer entry", ln, None, source) from None
        if len(row) != n:
            raise ParseError(f"expected {n} entries, found {len(row)}", ln, None, source)
        rows.append(row)
    return LatticeBasis(np.array(rows, dtype=np.int64).reshape(n, n), provenance=source)
