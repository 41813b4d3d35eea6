"""Brute-force ground truth: square counts, constrained counts, empty-box
probabilities, and diagnostic evaluations of the counting bounds.

Counting fills rows in sequence; a row is a perfect matching between columns
and their remaining symbols.  Subtree counts are memoized on a canonical form
of the per-column availability masks (relabeling symbols, then sorting
columns), which collapses isomorphic states and makes orders up to the cap
tractable.  Constrained rows, when present, are filled first under the typed
variant of the same canonicalization, which relabels only within the
(restricted column, forbidden symbol) classes.

Natural logarithms throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .core import Box, LatinSquare
from .generators import jm_sample

__all__ = [
    "COUNT_CAP",
    "ENUMERATE_CAP",
    "EXACT_PROB_CAP",
    "LineCounts",
    "EmptyProbResult",
    "TypicalBound",
    "count_ls",
    "enumerate_ls",
    "constrained_count",
    "line_counts",
    "first_order_bound",
    "empty_prob",
    "typical_bound_diagnostic",
]

COUNT_CAP = 7
ENUMERATE_CAP = 5
EXACT_PROB_CAP = 5

_memo: dict = {}


def _canon_key(avail: tuple[int, ...], col_class: tuple[int, ...],
               sym_class: tuple[int, ...]) -> tuple:
    """Canonical form of an availability state.

    Symbols are relabeled by (class, column-incidence mask) and columns sorted
    by (class, relabeled mask); equal keys imply isomorphic states, so the
    memoized count carries over.
    """
    n = len(avail)
    colmask = [0] * n
    for j, m in enumerate(avail):
        while m:
            low = m & -m
            colmask[low.bit_length() - 1] |= 1 << j
            m &= m - 1
    order = sorted(range(n), key=lambda s: (sym_class[s], -colmask[s]))
    newidx = [0] * n
    for new, old in enumerate(order):
        newidx[old] = new
    relabeled = []
    for j, m in enumerate(avail):
        nm = 0
        while m:
            low = m & -m
            nm |= 1 << newidx[low.bit_length() - 1]
            m &= m - 1
        relabeled.append((col_class[j], nm))
    relabeled.sort()
    return tuple(relabeled), tuple(sym_class[s] for s in order)


_ZERO: tuple[int, ...] = ()


def _count_rows(avail: list[int], constrained_left: int,
                restricted_cols: int, zmask: int) -> int:
    """Rows remaining equals the popcount of any availability mask; the first
    ``constrained_left`` of them may not place a zmask symbol in a restricted
    column."""
    rows_left = bin(avail[0]).count("1") if avail else 0
    if rows_left == 0:
        return 1
    n = len(avail)
    if constrained_left > 0:
        col_class = tuple((restricted_cols >> j) & 1 for j in range(n))
        sym_class = tuple((zmask >> s) & 1 for s in range(n))
    else:
        col_class = sym_class = (0,) * n
    key = (constrained_left, *_canon_key(tuple(avail), col_class, sym_class))
    cached = _memo.get(key)
    if cached is not None:
        return cached

    block = zmask if constrained_left > 0 else 0
    total = 0
    chosen = [0] * n

    def dfs(used: int, depth: int) -> None:
        nonlocal total
        if depth == n:
            nxt = [avail[j] & ~chosen[j] for j in range(n)]
            total += _count_rows(nxt, max(constrained_left - 1, 0),
                                 restricted_cols, zmask)
            return
        best_j, best_opts, best_cnt = -1, 0, n + 1
        for j in range(n):
            if chosen[j]:
                continue
            opts = avail[j] & ~used
            if (restricted_cols >> j) & 1:
                opts &= ~block
            cnt = bin(opts).count("1")
            if cnt == 0:
                return
            if cnt < best_cnt:
                best_j, best_opts, best_cnt = j, opts, cnt
                if cnt == 1:
                    break
        m = best_opts
        while m:
            low = m & -m
            chosen[best_j] = low
            dfs(used | low, depth + 1)
            m &= m - 1
        chosen[best_j] = 0

    dfs(0, 0)
    _memo[key] = total
    return total


def count_ls(n: int) -> int:
    """Exact number of order-n Latin squares (n <= 7)."""
    if not (1 <= n <= COUNT_CAP):
        raise ValueError(f"count_ls needs 1 <= n <= {COUNT_CAP}, got {n}")
    full = (1 << n) - 1
    return _count_rows([full] * n, 0, 0, 0)


def constrained_count(n: int, forbidden: Box) -> int:
    """Number of order-n squares with no cell (i, j) in X x Y holding a symbol
    of Z, where the forbidden box is X x Y x Z (n <= 7)."""
    if not (1 <= n <= COUNT_CAP):
        raise ValueError(f"constrained_count needs 1 <= n <= {COUNT_CAP}, got {n}")
    if len(forbidden.parts) != 3:
        raise ValueError("forbidden box needs exactly 3 parts")
    x, y, z = forbidden.parts
    for part in (x, y, z):
        if any(not (1 <= v <= n) for v in part):
            raise ValueError(f"box part not within 1..{n}")
    if not x or not y or not z:
        return count_ls(n)
    ymask = 0
    for j in y:
        ymask |= 1 << (j - 1)
    zmask = 0
    for s in z:
        zmask |= 1 << (s - 1)
    full = (1 << n) - 1
    # fill the restricted rows first; the row order does not change the count
    return _count_rows([full] * n, len(x), ymask, zmask)


def enumerate_ls(n: int) -> Iterator[LatinSquare]:
    """Stream every order-n Latin square, row-major backtracking (n <= 5)."""
    if not (1 <= n <= ENUMERATE_CAP):
        raise ValueError(f"enumerate_ls needs 1 <= n <= {ENUMERATE_CAP}, got {n}")
    full = (1 << n) - 1
    grid = [[0] * n for _ in range(n)]
    colavail = [full] * n

    def rows(r: int) -> Iterator[LatinSquare]:
        if r == n:
            yield LatinSquare.from_rows(grid)
            return

        def cells(j: int, rowused: int) -> Iterator[LatinSquare]:
            if j == n:
                yield from rows(r + 1)
                return
            opts = colavail[j] & ~rowused
            while opts:
                low = opts & -opts
                opts &= opts - 1
                s = low.bit_length()
                grid[r][j] = s
                colavail[j] &= ~low
                yield from cells(j + 1, rowused | low)
                colavail[j] |= low
            grid[r][j] = 0

        yield from cells(0, 0)

    yield from rows(0)


@dataclass(frozen=True)
class LineCounts:
    """Per-line fill counts of a 0-1 tensor along its last axis."""

    r: np.ndarray

    @property
    def d(self) -> int:
        return self.r.ndim

    @property
    def n(self) -> int:
        return self.r.shape[0] if self.r.ndim else 0


def line_counts(arr: np.ndarray) -> LineCounts:
    arr = np.asarray(arr)
    if arr.ndim < 2:
        raise ValueError("tensor must have at least 2 axes")
    n = arr.shape[0]
    if any(s != n for s in arr.shape):
        raise ValueError(f"tensor must be cubical, got shape {arr.shape}")
    if not np.isin(arr, (0, 1)).all():
        raise ValueError("tensor entries must be 0 or 1")
    return LineCounts(arr.sum(axis=-1))


def first_order_bound(arr: np.ndarray) -> float:
    """Kernel sum(log(r) - d) of the permanent upper bound, without its
    unspecified low-order correction factor.  Diagnostic only; at small n the
    kernel alone lies below the true log-permanent."""
    lc = line_counts(arr)
    r = lc.r
    if (r == 0).any():
        idx = tuple(int(v) + 1 for v in np.argwhere(r == 0)[0])
        raise ValueError(f"line {idx} contains no ones; the permanent is 0")
    d = lc.d
    return float(np.log(r).sum() - d * r.size)


@dataclass(frozen=True)
class EmptyProbResult:
    mode: str
    value: float
    stderr: float
    samples: int


def empty_prob(n: int, x: Iterable[int], y: Iterable[int], z: Iterable[int],
               mode: str = "exact", samples: int = 0, seed: int = 0,
               burn_in: int | None = None) -> EmptyProbResult:
    """Probability that the box X x Y x Z is empty in a random square.

    Exact mode divides the constrained count by the total count (n <= 5);
    monte_carlo draws ``samples`` walk samples and reports the empirical
    fraction with the binomial standard error.
    """
    box = Box.of(x, y, z)
    if mode == "exact":
        if n > EXACT_PROB_CAP:
            raise ValueError(f"exact mode needs n <= {EXACT_PROB_CAP}, got {n}")
        value = constrained_count(n, box) / count_ls(n)
        return EmptyProbResult("exact", value, 0.0, 0)
    if mode != "monte_carlo":
        raise ValueError(f"mode must be 'exact' or 'monte_carlo', got {mode!r}")
    if samples < 1:
        raise ValueError(f"monte_carlo needs samples >= 1, got {samples}")
    xs, ys, zs = box.parts
    hits = 0
    for i in range(samples):
        ls = jm_sample(n, burn_in=burn_in, seed=seed + i)
        empty = all(ls.grid[r - 1][c - 1] not in zs for r in xs for c in ys)
        hits += empty
    p = hits / samples
    stderr = math.sqrt(p * (1 - p) / samples)
    return EmptyProbResult("monte_carlo", p, stderr, samples)


@dataclass(frozen=True)
class TypicalBound:
    log_value: float
    vanishing: bool


def typical_bound_diagnostic(n: int, c: float, big_m: float) -> TypicalBound:
    """Log of the union-bound failure probability 2^{3n} e^{c n ln^2 n} times
    e^{-M n ln^2 n}, with the hidden constant exposed as c.  Useful (bound
    vanishing) iff the value is negative."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    ln2n = math.log(n) ** 2
    value = 3 * n * math.log(2) + c * n * ln2n - big_m * n * ln2n
    return TypicalBound(value, value < 0)
