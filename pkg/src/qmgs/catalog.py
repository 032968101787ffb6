"""Built-in quivers and the plain-text matrix format.

Format::

    # comment lines start with '#'
    3
    0 2 -2
    -2 0 2
    2 -2 0
    D: 1 1 1          (optional symmetrizer line)

Serialization writes minimal decimal integers separated by single spaces,
one trailing newline, and a ``D:`` line only when the matrix is not
skew-symmetric.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .errors import NotSkewSymmetrizable, ParseError, UnknownName, ValidationError
from .matrix import ExchangeMatrix

NAMES = ("x7", "x7b", "a2", "a3", "a4", "cycle3", "markov", "kronecker2")

_NOTES = {
    "x7": "exceptional mutation-finite quiver X7; vertex 1 is the center",
    "x7b": "second member of the X7 mutation class, canonical form of mu_1(x7)",
    "a2": "Dynkin A2, arrow 2 -> 1",
    "a3": "Dynkin A3, linear orientation",
    "a4": "Dynkin A4, linear orientation",
    "cycle3": "oriented 3-cycle with single arrows",
    "markov": "Markov quiver, oriented 3-cycle with double arrows",
    "kronecker2": "Kronecker quiver, double arrow",
}


@dataclass(frozen=True)
class NamedQuiver:
    name: str
    B: ExchangeMatrix
    notes: str


def _parse_int(tok: str, line: int, col: int) -> int:
    try:
        return int(tok, 10)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", line, col) from None


def _tokens(text: str) -> list[tuple[str, int]]:
    out = []
    col = 0
    for tok in text.split():
        col = text.index(tok, col)
        out.append((tok, col + 1))
        col += len(tok)
    return out


def parse_matrix(text: str) -> ExchangeMatrix:
    """Parse the matrix text format.

    Raises
    ------
    ParseError
        On malformed input, with 1-based line and column.
    ValidationError
        If the matrix is not skew-symmetrizable, or a ``D:`` line is given
        that does not symmetrize it.
    """
    lines = [
        (no, raw) for no, raw in enumerate(text.splitlines(), start=1)
        if raw.strip() and not raw.lstrip().startswith("#")
    ]
    if not lines:
        raise ParseError("empty input", 1)
    no, raw = lines[0]
    head = _tokens(raw)
    if len(head) != 1:
        raise ParseError("first line must hold the single integer n", no, head[1][1] if len(head) > 1 else 1)
    n = _parse_int(head[0][0], no, head[0][1])
    if n < 1:
        raise ParseError(f"n must be positive, got {n}", no, head[0][1])
    if len(lines) < n + 1:
        raise ParseError(f"expected {n} matrix rows, found {len(lines) - 1}", lines[-1][0] + 1)
    rows = []
    for no, raw in lines[1:n + 1]:
        toks = _tokens(raw)
        if toks and toks[0][0] == "D:":
            raise ParseError(f"expected {n} matrix rows before the D: line", no)
        if len(toks) != n:
            raise ParseError(f"expected {n} entries, found {len(toks)}", no)
        rows.append([_parse_int(t, no, c) for t, c in toks])
    diag = None
    rest = lines[n + 1:]
    if rest:
        no, raw = rest[0]
        toks = _tokens(raw)
        if toks[0][0] != "D:":
            raise ParseError("unexpected content after the matrix rows", no, toks[0][1])
        if len(toks) - 1 != n:
            raise ParseError(f"D: line needs {n} entries, found {len(toks) - 1}", no)
        diag = [_parse_int(t, no, c) for t, c in toks[1:]]
        if len(rest) > 1:
            raise ParseError("unexpected content after the D: line", rest[1][0])
    try:
        B = ExchangeMatrix(rows)
    except NotSkewSymmetrizable:
        raise
    except ValueError as exc:
        raise ValidationError(str(exc)) from None
    if diag is not None and not B.symmetrizes(diag):
        raise ValidationError(f"D: {' '.join(map(str, diag))} does not symmetrize the matrix")
    return B


def serialize_matrix(B: ExchangeMatrix) -> str:
    lines = [str(B.n)]
    lines.extend(" ".join(str(x) for x in row) for row in B.entries)
    if not B.is_skew_symmetric:
        lines.append("D: " + " ".join(str(d) for d in B.symmetrizer))
    return "\n".join(lines) + "\n"


def read_matrix(path: str | Path) -> ExchangeMatrix:
    return parse_matrix(Path(path).read_text(encoding="utf-8"))


@lru_cache(maxsize=None)
def get_named(name: str) -> NamedQuiver:
    if name not in NAMES:
        raise UnknownName(f"unknown quiver {name!r}; choose from {', '.join(NAMES)}")
    text = (resources.files("qmgs") / "data" / f"{name}.txt").read_text(encoding="utf-8")
    return NamedQuiver(name, parse_matrix(text), _NOTES[name])


def get_quiver(name: str) -> ExchangeMatrix:
    return get_named(name).B


def list_quivers() -> list[NamedQuiver]:
    return [get_named(name) for name in NAMES]
