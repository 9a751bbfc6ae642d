"""Matrix Market reader/writer for dense complex matrices.

Reads ``array`` (column-major) and ``coordinate`` files with ``complex`` or
``real`` fields and ``general`` symmetry. Writes ``array complex general``
using ``repr`` of each float, so a write/read round trip is bit-exact.
"""
from pathlib import Path

import numpy as np

from .errors import ParseError, UnsupportedFormat

__all__ = ["parse_matrix_market", "format_matrix_market", "read_matrix_market",
           "write_matrix_market"]


def _numbers(tokens, lineno):
    try:
        values = [float(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected numbers, got {' '.join(tokens)!r}", lineno) from None
    if not all(np.isfinite(values)):
        raise ParseError("non-finite value", lineno)
    return values


def parse_matrix_market(text):
    lines = text.splitlines()
    header_at = next((i for i, ln in enumerate(lines) if ln.strip()), None)
    if header_at is None:
        raise ParseError("empty input", 1)
    header = lines[header_at].split()
    if not header or header[0].lower() != "%%matrixmarket":
        raise ParseError("missing %%MatrixMarket header", header_at + 1)
    if len(header) != 5:
        raise ParseError("header must read '%%MatrixMarket matrix <format> <field> <symmetry>'",
                         header_at + 1)
    obj, fmt, fld, sym = (h.lower() for h in header[1:])
    if obj != "matrix":
        raise UnsupportedFormat(f"object {obj!r} is not supported")
    if fmt not in ("array", "coordinate"):
        raise UnsupportedFormat(f"format {fmt!r} is not supported")
    if fld not in ("complex", "real"):
        raise UnsupportedFormat(f"field {fld!r} is not supported")
    if sym != "general":
        raise UnsupportedFormat(f"symmetry {sym!r} is not supported")
    width = 2 if fld == "complex" else 1

    body = [(i + 1, ln.split()) for i, ln in enumerate(lines)
            if i > header_at and ln.strip() and not ln.lstrip().startswith("%")]
    if not body:
        raise ParseError("missing size line", len(lines))
    size_line, size = body[0]
    want = 2 if fmt == "array" else 3
    if len(size) != want:
        raise ParseError(f"size line needs {want} integers", size_line)
    try:
        dims = [int(t) for t in size]
    except ValueError:
        raise ParseError("size line must contain integers", size_line) from None
    rows, cols = dims[:2]
    if rows < 1 or cols < 1:
        raise ParseError("matrix dimensions must be positive", size_line)
    entries = body[1:]

    M = np.zeros((rows, cols), dtype=np.complex128)
    if fmt == "array":
        if len(entries) != rows * cols:
            raise ParseError(f"expected {rows * cols} entries, found {len(entries)}",
                             entries[-1][0] if entries else size_line)
        flat = np.empty(rows * cols, dtype=np.complex128)
        for k, (lineno, tokens) in enumerate(entries):
            if len(tokens) != width:
                raise ParseError(f"expected {width} values per entry", lineno)
            v = _numbers(tokens, lineno)
            flat[k] = complex(v[0], v[1] if width == 2 else 0.0)
        return flat.reshape((rows, cols), order="F")

    nnz = dims[2]
    if nnz < 0 or len(entries) != nnz:
        raise ParseError(f"expected {nnz} entries, found {len(entries)}",
                         entries[-1][0] if entries else size_line)
    seen = set()
    for lineno, tokens in entries:
        if len(tokens) != 2 + width:
            raise ParseError(f"expected row, column and {width} values", lineno)
        try:
            i, j = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ParseError("row and column indices must be integers", lineno) from None
        if not (1 <= i <= rows and 1 <= j <= cols):
            raise ParseError(f"index ({i}, {j}) out of range", lineno)
        if (i, j) in seen:
            raise ParseError(f"duplicate entry ({i}, {j})", lineno)
        seen.add((i, j))
        v = _numbers(tokens[2:], lineno)
        M[i - 1, j - 1] = complex(v[0], v[1] if width == 2 else 0.0)
    return M


def format_matrix_market(M, comment=None):
    M = np.asarray(M, dtype=np.complex128)
    if M.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {M.shape}")
    out = ["%%MatrixMarket matrix array complex general"]
    if comment:
        out.extend(f"% {ln}" for ln in comment.splitlines())
    out.append(f"{M.shape[0]} {M.shape[1]}")
    out.extend(f"{float(z.real)!r} {float(z.imag)!r}" for z in M.reshape(-1, order="F"))
    return "\n".join(out) + "\n"


def read_matrix_market(path):
    return parse_matrix_market(Path(path).read_text())


def write_matrix_market(path, M, comment=None):
    Path(path).write_text(format_matrix_market(M, comment))
