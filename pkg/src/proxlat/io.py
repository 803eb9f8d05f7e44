"""Reading and writing proxets, context matrices and results.

File format: UTF-8 CSV, comma separated. The header row holds the column
labels after an (ignored) corner cell; every following row starts with its
label. Lines starting with ``#`` are comments, except ``#mode: intensional``
(or ``extensional``) which sets the proxet mode.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from .exceptions import ParseError, ValidationError
from .matrix import ContextMatrix, matrix_violations
from .proxet import EXTENSIONAL, INTENSIONAL, Proxet, discrete, validate
from .values import format_value, from_stars, parse_value


def _read_grid(path) -> Tuple[List[Tuple[int, List[str]]], Optional[str]]:
    """Non-comment CSV rows with their 1-based line numbers, and the mode directive."""
    text = Path(path).read_text(encoding="utf-8")
    mode = None
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            directive = stripped[1:].strip().lower().replace(" ", "")
            if directive.startswith("mode:"):
                mode = directive[len("mode:"):]
                if mode not in (EXTENSIONAL, INTENSIONAL):
                    raise ParseError(f"unknown mode {mode!r}", path=path, line=lineno, token=mode)
            continue
        cells = next(csv.reader([line]))
        rows.append((lineno, [c.strip() for c in cells]))
    return rows, mode


def _split(path, rows):
    if not rows:
        raise ParseError("file has no header row", path=path)
    header_line, header = rows[0]
    cols = header[1:]
    _no_dups(path, header_line, cols)
    row_labels = [r[0] for _, r in rows[1:]]
    for (lineno, r) in rows[1:]:
        if len(r) != len(header):
            raise ParseError(
                f"row {r[0]!r} has {len(r) - 1} cells, header has {len(cols)}",
                path=path, line=lineno, token=r[0],
            )
    _no_dups(path, None, row_labels)
    return cols, rows[1:]


def _no_dups(path, line, labels):
    seen = set()
    for lab in labels:
        if lab in seen:
            raise ParseError(f"duplicate label {lab!r}", path=path, line=line, token=lab)
        seen.add(lab)


def _cell(path, lineno, token, stars):
    try:
        if stars is None:
            return parse_value(token)
        try:
            k = int(token)
        except ValueError:
            raise ParseError(f"star rating {token!r} is not an integer", token=token) from None
        try:
            return from_stars(k, stars)
        except ValueError as e:
            raise ParseError(str(e), token=token) from None
    except ParseError as e:
        raise ParseError(str(e.args[0]), path=path, line=lineno, token=token) from None


def read_proxet(path, mode: Optional[str] = None) -> Proxet:
    """Read and validate a square proxet table.

    ``mode`` overrides the file's ``#mode:`` directive; the default is
    extensional.
    """
    rows, file_mode = _read_grid(path)
    cols, body = _split(path, rows)
    labels = [r[0] for _, r in body]
    if labels != cols:
        raise ParseError("row labels must repeat the header labels in the same order", path=path)
    table = [[_cell(path, lineno, tok, None) for tok in r[1:]] for lineno, r in body]
    return validate(labels, table, mode or file_mode or EXTENSIONAL)


def read_context(path, stars: Optional[int] = None, rows_proxet: Optional[Proxet] = None,
                 cols_proxet: Optional[Proxet] = None) -> Tuple[Proxet, Proxet, ContextMatrix]:
    """Read a context matrix; rows are the source carrier, columns the target.

    Without sidecar proxets both carriers are discrete. With ``stars`` the
    cells are integer ratings out of ``stars``.
    """
    rows, _ = _read_grid(path)
    cols, body = _split(path, rows)
    labels = [r[0] for _, r in body]
    matrix = tuple(tuple(_cell(path, lineno, tok, stars) for tok in r[1:]) for lineno, r in body)
    a = rows_proxet if rows_proxet is not None else discrete(labels)
    b = cols_proxet if cols_proxet is not None else discrete(cols)
    if list(a.labels) != labels:
        raise ParseError("row proxet labels do not match the context rows", path=path)
    if list(b.labels) != cols:
        raise ParseError("column proxet labels do not match the context columns", path=path)
    found = matrix_violations(a, b, matrix)
    if found:
        raise ValidationError(f"{path}: not a proximity matrix ({len(found)} violations)", found)
    phi = ContextMatrix(a, b, matrix)
    return a, b, phi


def csv_text(rows: Sequence[Sequence[str]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue()


def proxet_rows(a: Proxet) -> List[List[str]]:
    rows = [[""] + [str(x) for x in a.labels]]
    for x, r in zip(a.labels, a.table):
        rows.append([str(x)] + [format_value(v) for v in r])
    return rows


def matrix_rows(phi: ContextMatrix) -> List[List[str]]:
    rows = [[""] + [str(y) for y in phi.target.labels]]
    for x, r in zip(phi.source.labels, phi.rows):
        rows.append([str(x)] + [format_value(v) for v in r])
    return rows


def write_proxet(a: Proxet) -> str:
    head = "" if a.is_extensional else "#mode: intensional\n"
    return head + csv_text(proxet_rows(a))


def write_matrix(phi: ContextMatrix) -> str:
    return csv_text(matrix_rows(phi))


def to_json_text(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def values_from_json(obj) -> dict:
    """Inverse of the ``{"kind": ..., "values": {...}}`` vector encoding."""
    values = obj["values"] if "values" in obj else obj
    return {k: parse_value(v) if isinstance(v, str) else Fraction(v) for k, v in values.items()}


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def hasse_dot(name: str, labels: Sequence[str], covers: Sequence[Tuple[int, int]]) -> str:
    """DOT text of a Hasse diagram; edges go from lower to upper element."""
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box];"]
    for i, lab in enumerate(labels):
        lines.append(f"  n{i} [label={_dot_quote(lab)}];")
    for i, j in covers:
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
