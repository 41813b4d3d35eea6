"""Extremal-box search: empty boxes and cubes, discrepancy maximization,
triple-system boxes, product-free sets, and section discrepancy.

Exact searchers enumerate one or two subset coordinates with bitmask dynamic
programming and derive the remaining coordinate in closed form (the maximal
completion given the others); heuristics run multi-start alternating
maximization or local search seeded deterministically from a master seed.
Ties are always broken lexicographically on (objective, part sizes, sorted
indices), so results do not depend on scheduling.

Emptiness means different things for the two box families and both are
implemented literally: a Latin-square box is empty when no cell of X x Y
holds a symbol of Z; a triple-system box is empty when no triple admits
distinct representatives i in A, j in B, k in C.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .core import (
    Box,
    BoxReport,
    LatinSquare,
    PermTensor,
    count_in_box,
    discrepancy_score,
    extract_section,
    tensor_of,
)
from .generators import GroupTable, TripleSystem, group_table, sts_to_ls

__all__ = [
    "EmptyBoxReport",
    "CubeReport",
    "PhiReport",
    "ProductFreeReport",
    "SectionReport",
    "guaranteed_empty_box",
    "greedy_empty_cube",
    "eps_exact",
    "eps_heuristic",
    "max_empty_cube",
    "disc_exact",
    "disc_heuristic",
    "phi",
    "product_free",
    "section_discrepancy",
    "EPS_EXACT_LIMIT",
    "DISC_EXACT_LIMIT",
    "PHI_EXACT_LIMIT",
    "CUBE_EXACT_LIMIT",
    "PRODUCT_FREE_EXACT_LIMIT",
]

EPS_EXACT_LIMIT = 12
DISC_EXACT_LIMIT = 10
PHI_EXACT_LIMIT = 10
CUBE_EXACT_LIMIT = 10
PRODUCT_FREE_EXACT_LIMIT = 24
SECTION_EXACT_LIMIT = 10

_ITER_CAP_FACTOR = 10  # alternating/local search cycle guard: 10 * n rounds


@dataclass(frozen=True)
class EmptyBoxReport:
    box: Box
    volume: int
    exact: bool
    restarts_used: int


@dataclass(frozen=True)
class CubeReport:
    box: Box
    side: int
    exact: bool
    restarts_used: int


@dataclass(frozen=True)
class PhiReport:
    box: Box
    volume: int
    exact: bool
    restarts_used: int


@dataclass(frozen=True)
class ProductFreeReport:
    elements: frozenset[int]
    size: int
    exact: bool
    restarts_used: int


@dataclass(frozen=True)
class SectionReport:
    value: float
    left: frozenset[int]
    right: frozenset[int]
    exact: bool
    restarts_used: int


# ---------------------------------------------------------------------------
# small helpers
# ---------------------------------------------------------------------------


def _mask_to_set(mask: int) -> frozenset[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask &= mask - 1
    return frozenset(out)


def _set_to_mask(values: Iterable[int]) -> int:
    mask = 0
    for v in values:
        mask |= 1 << (v - 1)
    return mask


def _pop_table(n: int) -> np.ndarray:
    pop = np.zeros(1 << n, dtype=np.int64)
    for b in range(n):
        pop[1 << b: 1 << (b + 1)] = pop[: 1 << b] + 1
    return pop


def _sub_seeds(seed: int, restarts: int) -> list[int]:
    rng = random.Random(seed)
    return [rng.getrandbits(64) for _ in range(restarts)]


def _box_key(volume_or_score, box_parts: Sequence[Iterable[int]]) -> tuple:
    """Lexicographic tie-break key: larger objective first, then smaller part
    sizes, then smaller sorted index tuples."""
    parts = tuple(tuple(sorted(p)) for p in box_parts)
    return (-volume_or_score, tuple(len(p) for p in parts), parts)


def _nonempty_mask(rng: random.Random, n: int) -> int:
    mask = rng.getrandbits(n)
    if mask == 0:
        mask = 1 << rng.randrange(n)
    return mask


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def guaranteed_empty_box(t: PermTensor) -> Box:
    """Empty box of volume floor(n/2)^2 that every permutation tensor contains.

    Take the first floor(n/2) indices as the second part and singletons {1}
    beyond; each of those indices rules out exactly one first-coordinate
    value, so floor(n/2) of the remaining values form an empty first part.
    """
    if t.n < 2:
        raise ValueError(f"order must be >= 2, got {t.n}")
    half = t.n // 2
    tail = (1,) * (t.d - 1)
    ruled = set()
    for pt in t.support:
        if pt[1] <= half and pt[2:] == tail:
            ruled.add(pt[0])
    first = []
    for v in range(1, t.n + 1):
        if v not in ruled:
            first.append(v)
            if len(first) == half:
                break
    return Box.of(first, range(1, half + 1), *([1],) * (t.d - 1))


def greedy_empty_cube(ls: LatinSquare) -> Box:
    """Empty cube of side s, the largest s with s^2 + s <= n: the top-left
    s x s submatrix shows at most s^2 symbols, leaving at least s absent."""
    n = ls.n
    s = 0
    while (s + 1) * (s + 1) + (s + 1) <= n:
        s += 1
    present = {ls.grid[i][j] for i in range(s) for j in range(s)}
    absent = [k for k in range(1, n + 1) if k not in present][:s]
    return Box.of(range(1, s + 1), range(1, s + 1), absent)


# ---------------------------------------------------------------------------
# empty-box volume (eps)
# ---------------------------------------------------------------------------


def eps_exact(ls: LatinSquare, limit: int = EPS_EXACT_LIMIT) -> EmptyBoxReport:
    """Certified maximum empty-box volume by enumerating symbol and row
    subsets; the column part is the maximal completion.

    Ties break lexicographically on (|Z|, Z, X).  Cost O(4^n * n) word ops.
    """
    n = ls.n
    if n > limit:
        raise ValueError(f"exact search capped at n <= {limit}, got n = {n}")
    if n > 63:
        raise ValueError("exact search uses 64-bit subset masks; n must be <= 63")
    # column bit of each (row, symbol): rows are permutations, so it is unique
    colbit = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            colbit[i][ls.grid[i][j] - 1] = 1 << j
    pop = _pop_table(n)
    size = 1 << n
    xvols = pop.copy()  # |X| per row mask
    best_vol = 0
    best = None  # (zt, xmask, ymask)
    union = np.zeros(size, dtype=np.int64)
    for m in range(1, n + 1):
        for zt in combinations(range(1, n + 1), m):
            rowmask = [0] * n
            for i in range(n):
                acc = 0
                for k in zt:
                    acc |= colbit[i][k - 1]
                rowmask[i] = acc
            union[0] = 0
            for b in range(n):
                np.bitwise_or(union[: 1 << b], rowmask[b], out=union[1 << b: 1 << (b + 1)])
            vols = xvols * (n - pop[union]) * m
            vols[0] = -1
            zmax = int(vols.max())
            if zmax > best_vol:
                ties = np.nonzero(vols == zmax)[0]
                xmask = int(ties[0]) if len(ties) == 1 else _lex_min_mask(ties)
                best_vol = zmax
                full = size - 1
                best = (zt, xmask, (~int(union[xmask])) & full)
    if best is None:
        return EmptyBoxReport(Box.of([], [], []), 0, True, 0)
    zt, xmask, ymask = best
    box = Box.of(_mask_to_set(xmask), _mask_to_set(ymask), zt)
    _verify_empty(ls, box)
    return EmptyBoxReport(box, best_vol, True, 0)


def _lex_min_mask(masks: Iterable[int]) -> int:
    return min((tuple(sorted(_mask_to_set(int(m)))), int(m)) for m in masks)[1]


def _verify_empty(ls: LatinSquare, box: Box) -> None:
    if count_in_box(tensor_of(ls), box) != 0:
        raise AssertionError(f"reported box {box.sorted_parts()} is not empty")


def _eps_fixpoint(ls: LatinSquare, xmask: int, ymask: int) -> tuple[int, int, int]:
    """Alternating maximization from (X, Y): each round replaces one part by
    its maximal completion given the other two, until a full round changes
    nothing."""
    n = ls.n
    grid = ls.grid
    full = (1 << n) - 1
    zmask = 0
    for _ in range(_ITER_CAP_FACTOR * n):
        present = 0
        xm = xmask
        while xm:
            low = xm & -xm
            xm &= xm - 1
            row = grid[low.bit_length() - 1]
            ym = ymask
            while ym:
                lj = ym & -ym
                ym &= ym - 1
                present |= 1 << (row[lj.bit_length() - 1] - 1)
        new_z = full & ~present
        bad_cols = 0
        xm = xmask
        while xm:
            low = xm & -xm
            xm &= xm - 1
            row = grid[low.bit_length() - 1]
            for j in range(n):
                if (new_z >> (row[j] - 1)) & 1:
                    bad_cols |= 1 << j
        new_y = full & ~bad_cols
        bad_rows = 0
        for i in range(n):
            row = grid[i]
            ym = new_y
            hit = False
            while ym:
                lj = ym & -ym
                ym &= ym - 1
                if (new_z >> (row[lj.bit_length() - 1] - 1)) & 1:
                    hit = True
                    break
            if hit:
                bad_rows |= 1 << i
        new_x = full & ~bad_rows
        if new_x == xmask and new_y == ymask and new_z == zmask:
            break
        xmask, ymask, zmask = new_x, new_y, new_z
    return xmask, ymask, zmask


def eps_heuristic(ls: LatinSquare, restarts: int = 100, seed: int = 0) -> EmptyBoxReport:
    """Multi-start alternating maximization of empty-box volume.

    The first start grows the guaranteed construction, the rest grow random
    seed boxes; the best box under the deterministic tie-break wins.
    """
    if restarts < 1:
        raise ValueError(f"restarts must be >= 1, got {restarts}")
    n = ls.n
    seeds = _sub_seeds(seed, restarts)
    best_key = None
    best = None
    for r in range(restarts):
        if r == 0 and n >= 2:
            g = guaranteed_empty_box(tensor_of(ls))
            xmask = _set_to_mask(g.parts[0])
            ymask = _set_to_mask(g.parts[1])
        else:
            rng = random.Random(seeds[r])
            xmask = _nonempty_mask(rng, n)
            ymask = _nonempty_mask(rng, n)
        x, y, z = _eps_fixpoint(ls, xmask, ymask)
        parts = (_mask_to_set(x), _mask_to_set(y), _mask_to_set(z))
        vol = len(parts[0]) * len(parts[1]) * len(parts[2])
        key = _box_key(vol, parts)
        if best_key is None or key < best_key:
            best_key, best = key, (parts, vol)
    parts, vol = best
    box = Box.of(*parts)
    _verify_empty(ls, box)
    return EmptyBoxReport(box, vol, False, restarts)


# ---------------------------------------------------------------------------
# empty cubes
# ---------------------------------------------------------------------------


def _exact_cube_of_side(ls: LatinSquare, s: int) -> Box | None:
    """First (lexicographic) empty cube of side s, or None; exhaustive over
    row and column subsets with the symbol part derived."""
    n = ls.n
    if s == 0:
        return Box.of([], [], [])
    if 2 * s > n:
        return None  # an s x s submatrix shows >= s symbols, absent <= n - s
    for rows in combinations(range(n), s):
        for cols in combinations(range(n), s):
            present = {ls.grid[i][j] for i in rows for j in cols}
            if n - len(present) >= s:
                absent = [k for k in range(1, n + 1) if k not in present][:s]
                return Box.of([i + 1 for i in rows], [j + 1 for j in cols], absent)
    return None


def _cube_local_search(ls: LatinSquare, s: int, rng: random.Random) -> Box | None:
    """Steepest-descent single-element swaps on (rows, cols) with the symbol
    part kept optimal; returns an empty cube of side s or None when stuck."""
    n = ls.n
    grid = ls.grid
    rows = set(rng.sample(range(n), s))
    cols = set(rng.sample(range(n), s))
    for _ in range(_ITER_CAP_FACTOR * n):
        cnt = [0] * (n + 1)
        for i in rows:
            for j in cols:
                cnt[grid[i][j]] += 1
        syms = sorted(range(1, n + 1), key=lambda k: (cnt[k], k))[:s]
        in_c = [False] * (n + 1)
        for k in syms:
            in_c[k] = True
        score = sum(cnt[k] for k in syms)
        if score == 0:
            return Box.of([i + 1 for i in sorted(rows)],
                          [j + 1 for j in sorted(cols)], syms)
        # row loads against the current (cols, syms)
        load_r = [sum(in_c[grid[i][j]] for j in cols) for i in range(n)]
        out_r = min((load_r[i], i) for i in range(n) if i not in rows)
        in_r = max((load_r[i], i) for i in rows)
        delta_r = out_r[0] - in_r[0]
        load_c = [sum(in_c[grid[i][j]] for i in rows) for j in range(n)]
        out_c = min((load_c[j], j) for j in range(n) if j not in cols)
        in_c2 = max((load_c[j], j) for j in cols)
        delta_c = out_c[0] - in_c2[0]
        if delta_r >= 0 and delta_c >= 0:
            return None  # local minimum with residual count
        if delta_r <= delta_c:
            rows.remove(in_r[1])
            rows.add(out_r[1])
        else:
            cols.remove(in_c2[1])
            cols.add(out_c[1])
    return None


def max_empty_cube(ls: LatinSquare, restarts: int = 20, seed: int = 0,
                   limit_exact: int = CUBE_EXACT_LIMIT) -> CubeReport:
    """Largest empty cube found: exhaustive ladder for n <= limit_exact, else
    binary search over the side with multi-start local search per side,
    starting from the always-available greedy construction."""
    n = ls.n
    base = greedy_empty_cube(ls)
    side = len(base.parts[0])
    if n <= limit_exact:
        best = base
        while True:
            nxt = _exact_cube_of_side(ls, side + 1)
            if nxt is None:
                break
            best, side = nxt, side + 1
        if side > 0:
            _verify_empty(ls, best)
        return CubeReport(best, side, True, 0)
    used = 0
    seeds = iter(_sub_seeds(seed, max(1, restarts) * n))
    best = base
    lo, hi = side, n // 2
    while lo < hi:
        mid = (lo + hi + 1) // 2
        found = None
        for _ in range(max(1, restarts)):
            used += 1
            found = _cube_local_search(ls, mid, random.Random(next(seeds)))
            if found is not None:
                break
        if found is not None:
            best, lo = found, mid
        else:
            hi = mid - 1
    if lo > 0:
        _verify_empty(ls, best)
    return CubeReport(best, lo, False, used)


# ---------------------------------------------------------------------------
# discrepancy
# ---------------------------------------------------------------------------


def _score_from_counts(cnt: np.ndarray, nx: int, ny: int, n: int):
    """Exact best symbol part for fixed row and column parts.

    cnt holds per-symbol cell counts over X x Y.  For each size m the extreme
    achievable counts are the m smallest and m largest entries; returns
    (score, z_tuple, box_count).
    """
    order = np.lexsort((np.arange(n), cnt))
    asc = cnt[order]
    pre = np.cumsum(asc)
    suf = np.cumsum(asc[::-1])
    best = None
    for m in range(1, n + 1):
        vol = nx * ny * m
        expected = vol / n
        for count, picks in ((int(pre[m - 1]), order[:m]),
                             (int(suf[m - 1]), order[n - m:])):
            score = abs(count - expected) / math.sqrt(vol)
            z = tuple(sorted(int(v) + 1 for v in picks))
            key = (-score, (nx, ny, m), z)
            if best is None or key < best[0]:
                best = (key, score, z, count)
    return best[1], best[2], best[3]


def disc_exact(ls: LatinSquare, limit: int = DISC_EXACT_LIMIT) -> BoxReport:
    """Maximum discrepancy score over all boxes with nonempty parts.

    Rows are enumerated outerly; per-symbol counts for every column subset
    come from subset dynamic programming, and the symbol part is solved
    exactly by prefix/suffix sums of the sorted counts.
    """
    n = ls.n
    if n > limit:
        raise ValueError(f"exact search capped at n <= {limit}, got n = {n}")
    grid = np.array(ls.grid, dtype=np.int64) - 1
    pop = _pop_table(n)
    size = 1 << n
    marange = np.arange(1, n + 1, dtype=np.float64)
    best_key = None
    best = None
    counts = np.zeros((size, n), dtype=np.int64)
    for xs in range(1, n + 1):
        for xt in combinations(range(n), xs):
            colcnt = np.zeros((n, n), dtype=np.int64)
            for i in xt:
                colcnt[np.arange(n), grid[i]] += 1
            counts[0] = 0
            for b in range(n):
                np.add(counts[: 1 << b], colcnt[b], out=counts[1 << b: 1 << (b + 1)])
            asc = np.sort(counts, axis=1)
            pre = np.cumsum(asc, axis=1)
            suf = np.cumsum(asc[:, ::-1], axis=1)
            vol = xs * pop[:, None] * marange[None, :]
            with np.errstate(divide="ignore", invalid="ignore"):
                expected = vol / n
                scores = np.maximum(np.abs(pre - expected), np.abs(suf - expected))
                scores /= np.sqrt(vol)
            scores[0] = -1.0  # empty column part
            xmax = float(scores.max())
            if best_key is not None and xmax < -best_key[0]:
                continue
            for ymask, mm in zip(*np.nonzero(scores == xmax)):
                ymask, mm = int(ymask), int(mm)
                cnt = counts[ymask]
                score, z, cval = _score_from_counts(cnt, xs, int(pop[ymask]), n)
                parts = (frozenset(i + 1 for i in xt), _mask_to_set(ymask), frozenset(z))
                key = _box_key(score, parts)
                if best_key is None or key < best_key:
                    best_key = key
                    best = (parts, cval, score)
    parts, cval, score = best
    box = Box.of(*parts)
    return BoxReport(box, cval, score)


def disc_heuristic(ls: LatinSquare, restarts: int = 100, seed: int = 0) -> BoxReport:
    """Alternating ascent on the row and column parts with the exact symbol
    step; single-index flips accepted when the score strictly increases."""
    if restarts < 1:
        raise ValueError(f"restarts must be >= 1, got {restarts}")
    n = ls.n
    grid = ls.grid
    best_key = None
    best = None
    for sub in _sub_seeds(seed, restarts):
        rng = random.Random(sub)
        xset = set(_mask_to_set(_nonempty_mask(rng, n)))
        yset = set(_mask_to_set(_nonempty_mask(rng, n)))
        cnt = np.zeros(n, dtype=np.int64)
        for i in xset:
            for j in yset:
                cnt[grid[i - 1][j - 1] - 1] += 1
        score, z, cval = _score_from_counts(cnt, len(xset), len(yset), n)
        for _ in range(_ITER_CAP_FACTOR * n):
            move = None  # (score, kind, index, new cnt, z, cval)
            for i in range(1, n + 1):
                nc = cnt.copy()
                sign = -1 if i in xset else 1
                if sign < 0 and len(xset) == 1:
                    continue
                for j in yset:
                    nc[grid[i - 1][j - 1] - 1] += sign
                nx = len(xset) + sign
                s2, z2, c2 = _score_from_counts(nc, nx, len(yset), n)
                if s2 > score and (move is None or s2 > move[0]):
                    move = (s2, "x", i, nc, z2, c2)
            for j in range(1, n + 1):
                nc = cnt.copy()
                sign = -1 if j in yset else 1
                if sign < 0 and len(yset) == 1:
                    continue
                for i in xset:
                    nc[grid[i - 1][j - 1] - 1] += sign
                ny = len(yset) + sign
                s2, z2, c2 = _score_from_counts(nc, len(xset), ny, n)
                if s2 > score and (move is None or s2 > move[0]):
                    move = (s2, "y", j, nc, z2, c2)
            if move is None:
                break
            score, kind, idx, cnt, z, cval = move
            target = xset if kind == "x" else yset
            if idx in target:
                target.remove(idx)
            else:
                target.add(idx)
        parts = (frozenset(xset), frozenset(yset), frozenset(z))
        key = _box_key(score, parts)
        if best_key is None or key < best_key:
            best_key = key
            best = (parts, cval, score)
    parts, cval, score = best
    return BoxReport(Box.of(*parts), cval, score)


# ---------------------------------------------------------------------------
# triple-system boxes (phi)
# ---------------------------------------------------------------------------


def _phi_blockers(x: TripleSystem):
    """For each element e, the list of (u, v) pairs completing a triple with
    e; used to decide which third-part symbols a pair of parts rules out."""
    pairs: list[list[tuple[int, int]]] = [[] for _ in range(x.n + 1)]
    for a, b, c in x.triples:
        pairs[a].append((b, c))
        pairs[b].append((a, c))
        pairs[c].append((a, b))
    return pairs


def _phi_blocked(pairs, amask: int, bmask: int, n: int) -> int:
    """Mask of elements k that cannot join the third part for parts (A, B)."""
    blocked = 0
    for k in range(1, n + 1):
        for u, v in pairs[k]:
            ub, vb = 1 << (u - 1), 1 << (v - 1)
            if (amask & ub and bmask & vb) or (amask & vb and bmask & ub):
                blocked |= 1 << (k - 1)
                break
    return blocked


def _phi_empty(x: TripleSystem, amask: int, bmask: int, cmask: int) -> bool:
    for t in x.triples:
        for i, j, k in ((t[0], t[1], t[2]), (t[0], t[2], t[1]), (t[1], t[0], t[2]),
                        (t[1], t[2], t[0]), (t[2], t[0], t[1]), (t[2], t[1], t[0])):
            if amask >> (i - 1) & 1 and bmask >> (j - 1) & 1 and cmask >> (k - 1) & 1:
                return False
    return True


def phi(x: TripleSystem, restarts: int = 100, seed: int = 0,
        limit_exact: int = PHI_EXACT_LIMIT) -> PhiReport:
    """Maximum volume of an empty triple-system box.

    Exact by enumerating the first two parts (the third is the maximal
    completion) for n <= limit_exact, alternating maximization beyond.  On
    the exact path of a complete system the result is checked against the
    empty-box volume of the derived Latin square, which it must dominate.
    """
    n = x.n
    pairs = _phi_blockers(x)
    exact = n <= limit_exact
    if exact:
        if n > 63:
            raise ValueError("exact search uses 64-bit subset masks; n must be <= 63")
        pop = _pop_table(n)
        size = 1 << n
        blocked = np.zeros(size, dtype=np.int64)
        best_key = None
        best = None
        for asz in range(1, n + 1):
            for at in combinations(range(1, n + 1), asz):
                amask = _set_to_mask(at)
                elem_block = [0] * n
                for b in range(1, n + 1):
                    acc = 0
                    for u, v in pairs[b]:
                        if amask >> (u - 1) & 1:
                            acc |= 1 << (v - 1)
                        if amask >> (v - 1) & 1:
                            acc |= 1 << (u - 1)
                    elem_block[b - 1] = acc
                blocked[0] = 0
                for b in range(n):
                    np.bitwise_or(blocked[: 1 << b], elem_block[b],
                                  out=blocked[1 << b: 1 << (b + 1)])
                vols = asz * pop * (n - pop[blocked])
                vols[0] = -1
                amax = int(vols.max())
                if best_key is not None and amax < -best_key[0]:
                    continue
                for bmask in np.nonzero(vols == amax)[0]:
                    bmask = int(bmask)
                    cmask = ((1 << n) - 1) & ~int(blocked[bmask])
                    parts = (frozenset(at), _mask_to_set(bmask), _mask_to_set(cmask))
                    key = _box_key(amax, parts)
                    if best_key is None or key < best_key:
                        best_key, best = key, (parts, amax)
        parts, vol = best if best is not None else ((frozenset(), frozenset(), frozenset()), 0)
        restarts_used = 0
    else:
        parts, vol = _phi_heuristic(x, pairs, restarts, seed)
        restarts_used = restarts
    amask, bmask, cmask = (_set_to_mask(p) for p in parts)
    if not _phi_empty(x, amask, bmask, cmask):
        raise AssertionError("reported triple-system box is not empty")
    if exact and x.is_complete and n <= EPS_EXACT_LIMIT:
        eps = eps_exact(sts_to_ls(x)).volume
        if eps > vol:
            raise AssertionError(
                f"square empty-box volume {eps} exceeds system volume {vol}")
    return PhiReport(Box.of(*parts), vol, exact, restarts_used)


def _phi_heuristic(x: TripleSystem, pairs, restarts: int, seed: int):
    n = x.n
    full = (1 << n) - 1
    best_key = None
    best = None
    seeds = _sub_seeds(seed, restarts)
    for r in range(restarts):
        if r == 0 and x.is_complete and n >= 2:
            g = guaranteed_empty_box(tensor_of(sts_to_ls(x)))
            amask = _set_to_mask(g.parts[0])
            bmask = _set_to_mask(g.parts[1])
        else:
            rng = random.Random(seeds[r])
            amask = _nonempty_mask(rng, n)
            bmask = _nonempty_mask(rng, n)
        cmask = 0
        for _ in range(_ITER_CAP_FACTOR * n):
            new_c = full & ~_phi_blocked(pairs, amask, bmask, n)
            new_b = full & ~_phi_blocked(pairs, amask, new_c, n)
            new_a = full & ~_phi_blocked(pairs, new_b, new_c, n)
            if (new_a, new_b, new_c) == (amask, bmask, cmask):
                break
            amask, bmask, cmask = new_a, new_b, new_c
        parts = (_mask_to_set(amask), _mask_to_set(bmask), _mask_to_set(cmask))
        vol = len(parts[0]) * len(parts[1]) * len(parts[2])
        key = _box_key(vol, parts)
        if best_key is None or key < best_key:
            best_key, best = key, (parts, vol)
    return best


# ---------------------------------------------------------------------------
# product-free sets
# ---------------------------------------------------------------------------


def _as_table(g: GroupTable | LatinSquare) -> LatinSquare:
    return group_table(g) if isinstance(g, GroupTable) else g


def _pf_addable(e: int, members: list[int], member_set: set[int],
                products: set[int], grid) -> bool:
    if e in products:
        return False
    pe = grid[e - 1][e - 1]
    if pe == e or pe in member_set:
        return False
    for m in members:
        p1 = grid[m - 1][e - 1]
        p2 = grid[e - 1][m - 1]
        if p1 == e or p1 in member_set or p2 == e or p2 in member_set:
            return False
    return True


def _pf_is_valid(members: Iterable[int], grid) -> bool:
    ms = set(members)
    return all(grid[a - 1][b - 1] not in ms for a in ms for b in ms)


def product_free(g: GroupTable | LatinSquare, restarts: int = 100, seed: int = 0,
                 limit_exact: int = PRODUCT_FREE_EXACT_LIMIT) -> ProductFreeReport:
    """Largest set S with no x, y, z in S satisfying x*y = z under the table.

    Equivalently S x S x S is an empty box of the table with equal parts.
    Exact branch-and-bound below the limit (the first maximum found in index
    order is the lexicographically least); random greedy maximal sets beyond.
    """
    table = _as_table(g)
    n = table.n
    grid = table.grid
    if n <= limit_exact:
        best: list[int] = []

        def dfs(start: int, members: list[int], member_set: set[int],
                products: set[int]) -> None:
            nonlocal best
            if len(members) > len(best):
                best = members.copy()
            cand = [e for e in range(start, n + 1)
                    if _pf_addable(e, members, member_set, products, grid)]
            for pos, e in enumerate(cand):
                if len(members) + len(cand) - pos <= len(best):
                    return
                added = {grid[e - 1][e - 1]}
                for m in members:
                    added.add(grid[m - 1][e - 1])
                    added.add(grid[e - 1][m - 1])
                new_products = added - products
                members.append(e)
                member_set.add(e)
                products |= new_products
                dfs(e + 1, members, member_set, products)
                members.pop()
                member_set.remove(e)
                products -= new_products

        dfs(1, [], set(), set())
        result = frozenset(best)
        if not _pf_is_valid(result, grid):
            raise AssertionError("exact search produced an invalid set")
        return ProductFreeReport(result, len(result), True, 0)

    best_key = None
    best_set: frozenset[int] = frozenset()
    for sub in _sub_seeds(seed, restarts):
        rng = random.Random(sub)
        order = list(range(1, n + 1))
        rng.shuffle(order)
        members: list[int] = []
        member_set: set[int] = set()
        products: set[int] = set()
        for e in order:
            if _pf_addable(e, members, member_set, products, grid):
                members.append(e)
                member_set.add(e)
                products.add(grid[e - 1][e - 1])
                for m in members[:-1]:
                    products.add(grid[m - 1][e - 1])
                    products.add(grid[e - 1][m - 1])
        key = (-len(members), tuple(sorted(members)))
        if best_key is None or key < best_key:
            best_key = key
            best_set = frozenset(members)
    if not _pf_is_valid(best_set, grid):
        raise AssertionError("heuristic search produced an invalid set")
    return ProductFreeReport(best_set, len(best_set), False, restarts)


# ---------------------------------------------------------------------------
# section discrepancy
# ---------------------------------------------------------------------------


def section_discrepancy(ls: LatinSquare, s: Iterable[int], axis: int,
                        restarts: int = 100, seed: int = 0,
                        limit_exact: int = SECTION_EXACT_LIMIT) -> SectionReport:
    """Maximum |E(A,B) - (k/n)|A||B|| over vertex subsets of the section.

    For a fixed left part the best right part has a closed form (take every
    vertex whose deviation contribution has the target sign), so the exact
    search enumerates left parts only; beyond the limit, alternating one-side
    steps from random starts, both signs tried.
    """
    sec = extract_section(ls, s, axis)
    n, k = sec.n, sec.k
    adj = np.array(sec.adjacency(), dtype=np.float64)
    exact = n <= limit_exact
    if exact:
        pop = _pop_table(n)
        size = 1 << n
        deg = np.zeros((size, n), dtype=np.float64)
        for b in range(n):
            np.add(deg[: 1 << b], adj[b], out=deg[1 << b: 1 << (b + 1)])
        density = k * pop.astype(np.float64) / n
        dev = deg - density[:, None]
        plus = np.maximum(dev, 0.0).sum(axis=1)
        minus = np.maximum(-dev, 0.0).sum(axis=1)
        vals = np.maximum(plus, minus)
        vmax = float(vals.max())
        best_key = None
        best = None
        for amask in np.nonzero(vals == vmax)[0]:
            amask = int(amask)
            for sign, side in ((1.0, plus), (-1.0, minus)):
                if float(side[amask]) != vmax:
                    continue
                row = dev[amask] * sign
                bset = frozenset(int(j) + 1 for j in np.nonzero(row > 0)[0])
                aset = _mask_to_set(amask)
                key = (-vmax, (len(aset), len(bset)),
                       tuple(sorted(aset)), tuple(sorted(bset)))
                if best_key is None or key < best_key:
                    best_key, best = key, (aset, bset)
        aset, bset = best
        report = SectionReport(vmax, aset, bset, True, 0)
    else:
        report = _section_heuristic(adj, n, k, restarts, seed)
    # self-consistency: the witness reproduces the reported value
    recomputed = _section_value(adj, report.left, report.right, k, n)
    if abs(recomputed - report.value) > 1e-9:
        raise AssertionError("section witness does not reproduce the value")
    return report


def _section_value(adj: np.ndarray, left: frozenset[int], right: frozenset[int],
                   k: int, n: int) -> float:
    e = sum(adj[i - 1][j - 1] for i in left for j in right)
    return abs(e - k * len(left) * len(right) / n)


def _section_heuristic(adj: np.ndarray, n: int, k: int, restarts: int,
                       seed: int) -> SectionReport:
    best_key = None
    best = None
    for sub in _sub_seeds(seed, restarts):
        rng = random.Random(sub)
        for sign in (1.0, -1.0):
            bvec = np.zeros(n)
            for j in _mask_to_set(_nonempty_mask(rng, n)):
                bvec[j - 1] = 1.0
            avec = np.zeros(n)
            for _ in range(_ITER_CAP_FACTOR * n):
                dega = adj @ bvec
                new_a = (sign * (dega - k * bvec.sum() / n) > 0).astype(float)
                degb = adj.T @ new_a
                new_b = (sign * (degb - k * new_a.sum() / n) > 0).astype(float)
                if np.array_equal(new_a, avec) and np.array_equal(new_b, bvec):
                    break
                avec, bvec = new_a, new_b
            e = float(avec @ adj @ bvec)
            val = abs(e - k * avec.sum() * bvec.sum() / n)
            aset = frozenset(int(i) + 1 for i in np.nonzero(avec)[0])
            bset = frozenset(int(j) + 1 for j in np.nonzero(bvec)[0])
            key = (-val, (len(aset), len(bset)), tuple(sorted(aset)), tuple(sorted(bset)))
            if best_key is None or key < best_key:
                best_key, best = key, (val, aset, bset)
    val, aset, bset = best
    return SectionReport(val, aset, bset, False, restarts)
