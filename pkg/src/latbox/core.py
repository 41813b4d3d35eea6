"""Permutation tensors, Latin squares, boxes, and the counting primitives.

A d-dimensional permutation of order n is an [n]^(d+1) 0-1 array in which
every axis-parallel line carries exactly one 1; it is stored sparsely as the
set of its support points.  d=2 is a Latin square.  A box is a product of
coordinate subsets; its volume is the product of the part sizes.  All indices
and symbols are 1-based in the public API and in the file formats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator

__all__ = [
    "Verdict",
    "PermTensor",
    "LatinSquare",
    "Box",
    "BoxReport",
    "Section",
    "validate_tensor",
    "count_in_box",
    "discrepancy_score",
    "extract_section",
    "tensor_of",
    "latin_of",
]


@dataclass(frozen=True)
class Verdict:
    """Outcome of a structural validity check.

    On failure, ``axis`` is the 1-based free axis of the first violating line
    and ``line`` holds the fixed coordinates of that line (in axis order,
    skipping the free axis).
    """

    ok: bool
    reason: str = ""
    axis: int | None = None
    line: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.ok


def _as_part(part: Iterable[int]) -> frozenset[int]:
    return part if isinstance(part, frozenset) else frozenset(int(v) for v in part)


@dataclass(frozen=True)
class Box:
    """A product T_1 x ... x T_k of coordinate subsets; parts may be empty."""

    parts: tuple[frozenset[int], ...]

    @classmethod
    def of(cls, *parts: Iterable[int]) -> "Box":
        return cls(tuple(_as_part(p) for p in parts))

    @property
    def volume(self) -> int:
        vol = 1
        for p in self.parts:
            vol *= len(p)
        return vol

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.parts)

    def sorted_parts(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(sorted(p)) for p in self.parts)


@dataclass(frozen=True)
class BoxReport:
    """A box together with its support count and discrepancy score."""

    box: Box
    count: int
    score: float


@dataclass(frozen=True)
class PermTensor:
    """Sparse d-dimensional permutation candidate: the set of its 1-entries.

    Construction checks only coordinate ranges; the one-per-line property is
    checked by :func:`validate_tensor` so that violating tensors can be built
    and diagnosed.
    """

    d: int
    n: int
    support: frozenset[tuple[int, ...]]

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError(f"dimension must be >= 1, got {self.d}")
        if self.n < 1:
            raise ValueError(f"order must be >= 1, got {self.n}")
        for pt in self.support:
            if len(pt) != self.d + 1:
                raise ValueError(f"support point {pt} is not a {self.d + 1}-tuple")
            if any(not (1 <= c <= self.n) for c in pt):
                raise ValueError(f"support point {pt} out of range 1..{self.n}")

    @classmethod
    def from_points(cls, d: int, n: int, points: Iterable[tuple[int, ...]]) -> "PermTensor":
        return cls(d, n, frozenset(tuple(int(c) for c in pt) for pt in points))


def check_latin_grid(n: int, rows: Iterable[Iterable[int]]) -> Verdict:
    """Check that ``rows`` is an order-n grid whose rows and columns are
    permutations of 1..n.  Reports the first offending row or column."""
    grid = [tuple(int(v) for v in r) for r in rows]
    if n < 1:
        return Verdict(False, f"order must be >= 1, got {n}")
    if len(grid) != n:
        return Verdict(False, f"expected {n} rows, got {len(grid)}")
    full = frozenset(range(1, n + 1))
    for i, row in enumerate(grid, start=1):
        if len(row) != n:
            return Verdict(False, f"row {i} has {len(row)} entries, expected {n}")
        if frozenset(row) != full:
            return Verdict(False, f"row {i} is not a permutation of 1..{n}",
                           axis=3, line=(i,))
    for j in range(n):
        col = frozenset(row[j] for row in grid)
        if col != full:
            return Verdict(False, f"column {j + 1} is not a permutation of 1..{n}",
                           axis=3, line=(j + 1,))
    return Verdict(True)


@dataclass(frozen=True)
class LatinSquare:
    """Order-n grid with every row and column a permutation of 1..n."""

    n: int
    grid: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        verdict = check_latin_grid(self.n, self.grid)
        if not verdict:
            raise ValueError(verdict.reason)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "LatinSquare":
        grid = tuple(tuple(int(v) for v in r) for r in rows)
        return cls(len(grid), grid)

    def __call__(self, i: int, j: int) -> int:
        """Symbol at row i, column j (1-based)."""
        return self.grid[i - 1][j - 1]


def tensor_of(ls: LatinSquare) -> PermTensor:
    """The 2-dimensional permutation with A(i,j,k)=1 iff grid(i,j)=k."""
    pts = frozenset((i, j, ls.grid[i - 1][j - 1])
                    for i in range(1, ls.n + 1) for j in range(1, ls.n + 1))
    return PermTensor(2, ls.n, pts)


def latin_of(t: PermTensor) -> LatinSquare:
    """Inverse of :func:`tensor_of`; requires a valid d=2 tensor."""
    if t.d != 2:
        raise ValueError(f"expected a 2-dimensional tensor, got d={t.d}")
    verdict = validate_tensor(t)
    if not verdict:
        raise ValueError(f"tensor is not a permutation: {verdict.reason}")
    grid = [[0] * t.n for _ in range(t.n)]
    for i, j, k in t.support:
        grid[i - 1][j - 1] = k
    return LatinSquare.from_rows(grid)


def validate_tensor(t: PermTensor) -> Verdict:
    """Check the one-support-point-per-line property on every axis.

    A line of axis a is obtained by fixing the other d coordinates; validity
    means each such line holds exactly one support point.  The verdict names
    the first doubled line found, else the first missing line.
    """
    want = t.n ** t.d
    for axis in range(t.d + 1):
        seen: dict[tuple[int, ...], int] = {}
        for pt in t.support:
            key = pt[:axis] + pt[axis + 1:]
            seen[key] = seen.get(key, 0) + 1
        doubled = sorted(k for k, c in seen.items() if c > 1)
        if doubled:
            return Verdict(False, f"axis {axis + 1} line {doubled[0]} holds more "
                           "than one support point", axis=axis + 1, line=doubled[0])
        if len(seen) < want:
            missing = _first_missing_line(t.n, t.d, seen)
            return Verdict(False, f"axis {axis + 1} line {missing} holds no "
                           "support point", axis=axis + 1, line=missing)
    return Verdict(True)


def _first_missing_line(n: int, d: int, seen: dict) -> tuple[int, ...]:
    for key in product(range(1, n + 1), repeat=d):
        if key not in seen:
            return key
    raise AssertionError("no line missing")


def count_in_box(t: PermTensor, b: Box) -> int:
    """Number of support points of ``t`` inside box ``b``.

    Iterates over whichever of the box and the support is smaller, so the
    cost is proportional to min(volume, n^d).
    """
    if len(b.parts) != t.d + 1:
        raise ValueError(f"box has {len(b.parts)} parts, tensor needs {t.d + 1}")
    vol = b.volume
    if vol == 0:
        return 0
    if vol <= len(t.support):
        sup = t.support
        return sum(1 for pt in product(*(sorted(p) for p in b.parts)) if pt in sup)
    return sum(1 for pt in t.support
               if all(pt[i] in b.parts[i] for i in range(len(b.parts))))


def discrepancy_score(count: int, volume: int, n: int) -> float:
    """Normalized deviation |count - volume/n| / sqrt(volume)."""
    if volume < 1:
        raise ValueError("score is undefined for volume 0")
    return abs(count - volume / n) / math.sqrt(volume)


@dataclass(frozen=True)
class Section:
    """Bipartite graph on [n] + [n] induced by a symbol set along one axis.

    Regular of degree k on both sides, where k is the size of the inducing
    set.  Edges are ordered pairs (left, right), both 1-based.
    """

    n: int
    k: int
    edges: frozenset[tuple[int, int]]

    def degree_left(self, i: int) -> int:
        return sum(1 for (u, _) in self.edges if u == i)

    def degree_right(self, j: int) -> int:
        return sum(1 for (_, v) in self.edges if v == j)

    def adjacency(self) -> list[list[int]]:
        """0/1 matrix indexed 0-based: adj[i][j] = 1 iff edge (i+1, j+1)."""
        adj = [[0] * self.n for _ in range(self.n)]
        for u, v in self.edges:
            adj[u - 1][v - 1] = 1
        return adj


def extract_section(ls: LatinSquare, s: Iterable[int], axis: int) -> Section:
    """Section of ``ls`` along ``axis`` induced by the index set ``s``.

    Edge (i, j) is present iff some x in s completes (i, x, j) to a support
    point when x is placed at position ``axis`` (1=row, 2=column, 3=symbol).
    """
    sset = frozenset(int(v) for v in s)
    if not sset:
        raise ValueError("inducing set must be nonempty")
    if axis not in (1, 2, 3):
        raise ValueError(f"axis must be 1, 2 or 3, got {axis}")
    if any(not (1 <= v <= ls.n) for v in sset):
        raise ValueError(f"inducing set not within 1..{ls.n}")
    n = ls.n
    edges = set()
    if axis == 1:
        for x in sset:
            for i in range(1, n + 1):
                edges.add((i, ls.grid[x - 1][i - 1]))
    elif axis == 2:
        for x in sset:
            for i in range(1, n + 1):
                edges.add((i, ls.grid[i - 1][x - 1]))
    else:
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if ls.grid[i - 1][j - 1] in sset:
                    edges.add((i, j))
    return Section(n, len(sset), frozenset(edges))
