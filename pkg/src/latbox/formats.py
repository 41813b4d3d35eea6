"""Text formats for Latin squares, permutation tensors, and triple systems.

Latin square: first line "n", then n lines of n space-separated symbols.
Tensor: first line "d n", then one line per support point (d+1 integers),
written in sorted order.  Triple system: first line "n", then one line
"i j k" per triple with i < j < k, written in sorted order.  Everything is
1-based.  Writing then parsing is lossless, and parsing then writing
reproduces canonical files byte for byte.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

from .core import LatinSquare, PermTensor, check_latin_grid

if TYPE_CHECKING:
    from .generators import TripleSystem

__all__ = [
    "FormatError",
    "parse_latin_square",
    "read_latin_square",
    "write_latin_square",
    "parse_tensor",
    "read_tensor",
    "write_tensor",
    "parse_triple_system",
    "read_triple_system",
    "write_triple_system",
    "sniff_kind",
]


class FormatError(Exception):
    """Raised when a file cannot be parsed (as opposed to failing invariants)."""


def _int_fields(line: str, lineno: int) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError as exc:
        raise FormatError(f"line {lineno}: expected integers, got {line!r}") from exc


def _data_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line:
            out.append((lineno, line))
    return out


def parse_latin_square(text: str) -> tuple[int, list[list[int]]]:
    """Parse without checking the Latin property; returns (n, rows)."""
    lines = _data_lines(text)
    if not lines:
        raise FormatError("empty input")
    head = _int_fields(lines[0][1], lines[0][0])
    if len(head) != 1:
        raise FormatError(f"line {lines[0][0]}: expected a single order, got {head}")
    n = head[0]
    if len(lines) - 1 != n:
        raise FormatError(f"expected {n} rows, got {len(lines) - 1}")
    rows = []
    for lineno, line in lines[1:]:
        row = _int_fields(line, lineno)
        if len(row) != n:
            raise FormatError(f"line {lineno}: expected {n} entries, got {len(row)}")
        rows.append(row)
    return n, rows


def read_latin_square(text: str) -> LatinSquare:
    n, rows = parse_latin_square(text)
    verdict = check_latin_grid(n, rows)
    if not verdict:
        raise ValueError(verdict.reason)
    return LatinSquare.from_rows(rows)


def write_latin_square(ls: LatinSquare) -> str:
    lines = [str(ls.n)]
    lines.extend(" ".join(str(v) for v in row) for row in ls.grid)
    return "\n".join(lines) + "\n"


def parse_tensor(text: str) -> tuple[int, int, list[tuple[int, ...]]]:
    lines = _data_lines(text)
    if not lines:
        raise FormatError("empty input")
    head = _int_fields(lines[0][1], lines[0][0])
    if len(head) != 2:
        raise FormatError(f"line {lines[0][0]}: expected 'd n', got {lines[0][1]!r}")
    d, n = head
    points = []
    for lineno, line in lines[1:]:
        pt = _int_fields(line, lineno)
        if len(pt) != d + 1:
            raise FormatError(f"line {lineno}: expected {d + 1} coordinates, got {len(pt)}")
        points.append(tuple(pt))
    return d, n, points


def read_tensor(text: str) -> PermTensor:
    d, n, points = parse_tensor(text)
    return PermTensor.from_points(d, n, points)


def write_tensor(t: PermTensor) -> str:
    lines = [f"{t.d} {t.n}"]
    lines.extend(" ".join(str(c) for c in pt) for pt in sorted(t.support))
    return "\n".join(lines) + "\n"


def parse_triple_system(text: str) -> tuple[int, list[tuple[int, int, int]]]:
    lines = _data_lines(text)
    if not lines:
        raise FormatError("empty input")
    head = _int_fields(lines[0][1], lines[0][0])
    if len(head) != 1:
        raise FormatError(f"line {lines[0][0]}: expected a single order, got {head}")
    n = head[0]
    triples = []
    for lineno, line in lines[1:]:
        t = _int_fields(line, lineno)
        if len(t) != 3:
            raise FormatError(f"line {lineno}: expected 3 points, got {len(t)}")
        if not (t[0] < t[1] < t[2]):
            raise FormatError(f"line {lineno}: triple must be sorted i < j < k")
        triples.append((t[0], t[1], t[2]))
    return n, triples


def read_triple_system(text: str) -> "TripleSystem":
    from .generators import TripleSystem

    n, triples = parse_triple_system(text)
    return TripleSystem.from_triples(n, triples)


def write_triple_system(ts: "TripleSystem") -> str:
    lines = [str(ts.n)]
    lines.extend(" ".join(str(v) for v in t) for t in sorted(ts.triples))
    return "\n".join(lines) + "\n"


def sniff_kind(text: str) -> str:
    """Guess whether a file holds a tensor, a Latin square, or a triple system.

    A two-integer header means tensor.  With a one-integer header the file is
    read as a square when it has exactly n rows of n entries, else as a
    triple system.  Ambiguous n=3 files are treated as squares.
    """
    lines = _data_lines(text)
    if not lines:
        raise FormatError("empty input")
    head = _int_fields(lines[0][1], lines[0][0])
    if len(head) == 2:
        return "tensor"
    if len(head) != 1:
        raise FormatError(f"unrecognized header {lines[0][1]!r}")
    n = head[0]
    body = lines[1:]
    if len(body) == n and all(len(line.split()) == n for _, line in body):
        return "square"
    return "sts"
