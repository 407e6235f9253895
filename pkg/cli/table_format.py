"""Format texte des tables de Cayley.

    # commentaire
    # names: e a b
    3
    0 1 2
    1 2 0
    2 0 1

Ligne 1 utile = n, puis n lignes de n entiers (ligne = facteur de gauche).
Une ligne commençant par '#' est un commentaire ; `# names:` nomme les éléments.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from services.cayley_service import Semigroup, new_semigroup
from services.errors import SemigroupError

_NAMES_RE = re.compile(r"^#\s*names\s*:(.*)$", re.IGNORECASE)
_TOKEN_RE = re.compile(r"\S+")


class TableFormatError(SemigroupError):
    def __init__(self, line: int, column: int, message: str) -> None:
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


@dataclass(frozen=True)
class ParsedTable:
    semigroup: Semigroup
    names: tuple[str, ...] | None = None
    source: str = "<input>"

    def name(self, element: int) -> str:
        return self.names[element] if self.names else str(element)


def parse_table(text: str, *, source: str = "<input>") -> ParsedTable:
    names: tuple[str, ...] | None = None
    names_line = 0
    order: int | None = None
    rows: list[list[int]] = []
    last_line = 0

    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            m = _NAMES_RE.match(stripped)
            if m:
                names = tuple(m.group(1).split())
                names_line = lineno
            continue
        last_line = lineno
        tokens = [(m.group(), m.start() + 1) for m in _TOKEN_RE.finditer(raw)]

        if order is None:
            if len(tokens) != 1:
                raise TableFormatError(lineno, 1, "expected the order n alone on the first line")
            token, col = tokens[0]
            try:
                order = int(token)
            except ValueError:
                raise TableFormatError(lineno, col, f"order must be an integer, got {token!r}") from None
            if order < 1:
                raise TableFormatError(lineno, col, "order must be positive")
            continue

        if len(rows) == order:
            raise TableFormatError(lineno, 1, f"unexpected data after {order} rows")
        if len(tokens) != order:
            col = tokens[order][1] if len(tokens) > order else len(raw.rstrip()) + 1
            raise TableFormatError(lineno, col, f"expected {order} entries, got {len(tokens)}")
        row: list[int] = []
        for token, col in tokens:
            try:
                value = int(token)
            except ValueError:
                raise TableFormatError(lineno, col, f"not an integer: {token!r}") from None
            if not 0 <= value < order:
                raise TableFormatError(lineno, col, f"entry {value} is outside [0, {order - 1}]")
            row.append(value)
        rows.append(row)

    if order is None:
        raise TableFormatError(last_line + 1, 1, "empty table")
    if len(rows) != order:
        raise TableFormatError(last_line + 1, 1, f"expected {order} rows, got {len(rows)}")
    if names is not None and len(names) != order:
        raise TableFormatError(names_line, 1, f"{len(names)} names for {order} elements")

    return ParsedTable(semigroup=new_semigroup(order, rows), names=names, source=source)


def read_table(path: str | Path) -> ParsedTable:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise TableFormatError(0, 0, f"cannot read {p}: {exc.strerror or exc}") from exc
    return parse_table(text, source=str(p))


def format_table(
    s: Semigroup,
    *,
    names: tuple[str, ...] | None = None,
    comment: str | None = None,
) -> str:
    width = len(str(s.order - 1))
    lines: list[str] = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    if names:
        lines.append("# names: " + " ".join(names))
    lines.append(str(s.order))
    for row in s.table:
        lines.append(" ".join(str(v).rjust(width) for v in row))
    return "\n".join(lines) + "\n"
