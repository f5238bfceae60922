"""Reading rational matrices: CSV configurations and distance matrices."""

from __future__ import annotations

import re
from fractions import Fraction

from .core import Configuration, TropicalError

__all__ = ["MatrixParseError", "parse_matrix", "parse_rational", "parse_metric"]

_TOKEN = re.compile(r"[^\s,;]+")


class MatrixParseError(TropicalError):
    """Malformed matrix text; ``line`` and ``column`` are 1-based."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.reason = message


def parse_rational(token: str) -> Fraction:
    """Exact value of ``"3"``, ``"-0.25"``, ``"1/3"`` or ``"1e-2"``.

    Raises ``ValueError`` on anything else, including ``inf`` and ``nan``.
    """
    try:
        value = Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {token!r}") from exc
    return value


def _number(token: str, line: int, column: int) -> Fraction:
    try:
        return parse_rational(token)
    except ValueError:
        raise MatrixParseError(f"unparseable token {token!r}", line, column) from None


def _is_number(token: str) -> bool:
    try:
        parse_rational(token)
    except ValueError:
        return False
    return True


def _lines(text: str):
    """Yield ``(line number, [(column, token), ...])`` for non-blank, non-comment lines."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        tokens = [(m.start() + 1, m.group()) for m in _TOKEN.finditer(body)]
        if tokens:
            yield lineno, tokens


def _parse_rows(text: str) -> tuple[list[list[Fraction]], list[int]]:
    rows: list[list[Fraction]] = []
    linenos: list[int] = []
    width = None
    for lineno, tokens in _lines(text):
        row = [_number(tok, lineno, col) for col, tok in tokens]
        if width is None:
            width = len(row)
        elif len(row) != width:
            col = tokens[min(width, len(tokens) - 1)][0]
            raise MatrixParseError(
                f"row {len(rows)} has {len(row)} entries, expected {width}", lineno, col
            )
        rows.append(row)
        linenos.append(lineno)
    if not rows:
        raise MatrixParseError("no matrix rows found", 1)
    return rows, linenos


def _parse_phylip(lines: list, n: int) -> tuple[list[list[Fraction]], list[int]]:
    """Rows after the leading ``n``: optional taxon name, then distances.

    Accepted layouts are square, lower triangle with diagonal, and strict
    lower triangle (whose first row may be absent when taxa are unnamed).
    """
    rows = []
    for lineno, tokens in lines:
        if tokens and not _is_number(tokens[0][1]):
            tokens = tokens[1:]
        rows.append((lineno, [(col, _number(tok, lineno, col)) for col, tok in tokens]))
    counts = [len(values) for _, values in rows]
    if len(rows) == n - 1 and counts == list(range(1, n)):
        rows.insert(0, (rows[0][0], []))
        counts.insert(0, 0)
    if len(rows) != n:
        raise MatrixParseError(f"expected {n} distance rows, found {len(rows)}", rows[-1][0])
    if counts == [n] * n:
        layout = "square"
    elif counts == list(range(n)):
        layout = "lower"
    elif counts == list(range(1, n + 1)):
        layout = "lower-diagonal"
    else:
        # blame the first row that fits no layout
        for i, (lineno, values) in enumerate(rows):
            if counts[i] not in (n, i, i + 1):
                col = values[-1][0] if values else 1
                raise MatrixParseError(f"row {i} has {counts[i]} distances", lineno, col)
        raise MatrixParseError("rows mix square and triangular layouts", rows[0][0])
    full = [[Fraction(0)] * n for _ in range(n)]
    for i, (lineno, values) in enumerate(rows):
        if layout == "square":
            for j, (_col, v) in enumerate(values):
                full[i][j] = v
            continue
        for j, (_col, v) in enumerate(values[:i]):
            full[i][j] = full[j][i] = v
        if layout == "lower-diagonal" and values[i][1] != 0:
            raise MatrixParseError(f"nonzero diagonal entry in row {i}", lineno, values[i][0])
    return full, [lineno for lineno, _ in rows]


def parse_metric(text: str):
    """A distance matrix, either square CSV or PHYLIP-style with a leading ``n``."""
    from .phylo import MetricMatrix

    lines = list(_lines(text))
    if not lines:
        raise MatrixParseError("no matrix rows found", 1)
    first_line, first = lines[0]
    if len(first) == 1 and re.fullmatch(r"\d+", first[0][1]) and len(lines) > 1:
        rows, linenos = _parse_phylip(lines[1:], int(first[0][1]))
    else:
        rows, linenos = _parse_rows(text)
        if len(rows) != len(rows[0]):
            raise MatrixParseError(
                f"distance matrix must be square, got {len(rows)}x{len(rows[0])}", first_line
            )
    n = len(rows)
    for i in range(n):
        if rows[i][i] != 0:
            raise MatrixParseError(f"nonzero diagonal entry at ({i}, {i})", linenos[i])
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                raise MatrixParseError(f"asymmetric entries at ({i}, {j})", linenos[j])
            if rows[i][j] < 0:
                raise MatrixParseError(f"negative distance at ({i}, {j})", linenos[j])
    return MetricMatrix(rows)


def parse_matrix(text: str, metric: bool = False):
    """Parse a configuration (CSV rows) or, with ``metric``, a distance matrix.

    Entries are converted exactly: ``"0.25"`` becomes ``1/4``.  Commas,
    semicolons and whitespace all separate entries; ``#`` starts a comment.
    """
    if metric:
        return parse_metric(text)
    rows, _ = _parse_rows(text)
    return Configuration(rows)
