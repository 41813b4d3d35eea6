"""Latin square and Steiner triple system generators.

Random squares come from a Jacobson-Matthews style walk: +-1 moves on 2x2x2
subcubes of the 0-1 incidence cube, passing through at most one improper cell.
The walk's stationary distribution on proper squares is uniform; the sampler
runs a fixed number of accepted moves from the cyclic table and then continues
until the square is proper again.  The hot loop is compiled with numba so
that scans over many orders stay cheap.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np
from numba import njit

from .core import LatinSquare

__all__ = [
    "GroupTable",
    "TripleSystem",
    "CompletionBudgetError",
    "jm_sample",
    "group_table",
    "bose_sts",
    "skolem_sts",
    "sts_to_ls",
    "complete_random_greedy",
]


@dataclass(frozen=True)
class GroupTable:
    """Finite abelian group Z_m1 x ... x Z_mr presented by its moduli."""

    moduli: tuple[int, ...]

    @classmethod
    def of(cls, moduli: Iterable[int]) -> "GroupTable":
        mods = tuple(int(m) for m in moduli)
        if not mods or any(m < 1 for m in mods):
            raise ValueError(f"moduli must be positive integers, got {mods}")
        return cls(mods)

    @property
    def n(self) -> int:
        prod = 1
        for m in self.moduli:
            prod *= m
        return prod


def group_table(g: GroupTable) -> LatinSquare:
    """Addition table of the group under the mixed-radix element order.

    Element e-1 (0-based) decodes least-significant-modulus first, so
    moduli [n] reproduces the circulant grid(i,j) = ((i+j-2) mod n) + 1.
    """
    n = g.n
    index = {}
    elems = []
    for e in range(n):
        rem, tup = e, []
        for m in g.moduli:
            tup.append(rem % m)
            rem //= m
        elems.append(tuple(tup))
        index[tuple(tup)] = e
    grid = []
    for a in elems:
        row = []
        for b in elems:
            s = tuple((x + y) % m for x, y, m in zip(a, b, g.moduli))
            row.append(index[s] + 1)
        grid.append(row)
    return LatinSquare.from_rows(grid)


# ---------------------------------------------------------------------------
# Steiner triple systems
# ---------------------------------------------------------------------------

Triple = tuple[int, int, int]


def check_triple_system(n: int, triples: Iterable[Sequence[int]]):
    """Partial-system check: every pair in at most one triple.

    Returns (ok, message, offending_pair).
    """
    seen: dict[tuple[int, int], Triple] = {}
    for t in triples:
        tt = tuple(sorted(int(v) for v in t))
        if len(tt) != 3 or len(set(tt)) != 3:
            return False, f"{t} is not a 3-element subset", None
        if any(not (1 <= v <= n) for v in tt):
            return False, f"triple {tt} out of range 1..{n}", None
        for pair in combinations(tt, 2):
            if pair in seen:
                return False, f"pair {pair} covered by both {seen[pair]} and {tt}", pair
            seen[pair] = tt  # type: ignore[assignment]
    return True, "", None


@dataclass(frozen=True)
class TripleSystem:
    """Partial Steiner triple system: pairwise intersections of size <= 1."""

    n: int
    triples: frozenset[Triple]

    def __post_init__(self) -> None:
        ok, msg, _ = check_triple_system(self.n, self.triples)
        if not ok:
            raise ValueError(msg)

    @classmethod
    def from_triples(cls, n: int, triples: Iterable[Sequence[int]]) -> "TripleSystem":
        canon = frozenset(tuple(sorted(int(v) for v in t)) for t in triples)
        return cls(n, canon)  # type: ignore[arg-type]

    @property
    def is_complete(self) -> bool:
        return 6 * len(self.triples) == self.n * (self.n - 1)

    def third_point(self) -> dict[tuple[int, int], int]:
        """Map each covered pair (i, j), i < j, to the third point of its triple."""
        third = {}
        for a, b, c in self.triples:
            third[(a, b)] = c
            third[(a, c)] = b
            third[(b, c)] = a
        return third


def _require_residue(n: int, residue: int, name: str) -> None:
    if n < 3 or n % 6 != residue:
        raise ValueError(
            f"the {name} construction needs n == {residue} (mod 6) and n >= 3, got {n}"
        )


def bose_sts(n: int) -> TripleSystem:
    """Complete system of order n = 6k+3 from an idempotent quasigroup on Z_{2k+1}.

    Points (x, i) in Z_{2k+1} x {0,1,2} are numbered 3x + i + 1.
    """
    _require_residue(n, 3, "Bose")
    k = (n - 3) // 6
    m = 2 * k + 1
    half = k + 1  # (k+1)*(x+y) mod m is idempotent and commutative

    def pt(x: int, i: int) -> int:
        return 3 * x + i + 1

    triples = []
    for x in range(m):
        triples.append((pt(x, 0), pt(x, 1), pt(x, 2)))
    for x in range(m):
        for y in range(x + 1, m):
            z = (half * (x + y)) % m
            for i in range(3):
                triples.append(tuple(sorted((pt(x, i), pt(y, i), pt(z, (i + 1) % 3)))))
    return TripleSystem.from_triples(n, triples)


def skolem_sts(n: int) -> TripleSystem:
    """Complete system of order n = 6k+1 from a half-idempotent quasigroup on Z_{2k}.

    Points (x, i) in Z_{2k} x {0,1,2} are numbered 3x + i + 1 and the extra
    point is n.
    """
    _require_residue(n, 1, "Skolem")
    k = (n - 1) // 6
    m = 2 * k
    # relabel the Z_{2k} addition table so elements 0..k-1 become idempotent
    sigma = [0] * m
    for i in range(k):
        sigma[2 * i] = i
        sigma[2 * i + 1] = k + i

    def op(x: int, y: int) -> int:
        return sigma[(x + y) % m]

    def pt(x: int, i: int) -> int:
        return 3 * x + i + 1

    inf = n
    triples = []
    for x in range(k):
        triples.append((pt(x, 0), pt(x, 1), pt(x, 2)))
    for x in range(k):
        for i in range(3):
            triples.append(tuple(sorted((inf, pt(k + x, i), pt(x, (i + 1) % 3)))))
    for x in range(m):
        for y in range(x + 1, m):
            z = op(x, y)
            for i in range(3):
                triples.append(tuple(sorted((pt(x, i), pt(y, i), pt(z, (i + 1) % 3)))))
    return TripleSystem.from_triples(n, triples)


def sts_to_ls(x: TripleSystem) -> LatinSquare:
    """Symmetric idempotent square: grid(i,i)=i and grid(i,j) = third point of
    the triple covering {i, j}."""
    n = x.n
    third = x.third_point()
    grid = [[0] * n for _ in range(n)]
    for i in range(1, n + 1):
        grid[i - 1][i - 1] = i
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            k = third.get((i, j))
            if k is None:
                raise ValueError(f"pair ({i}, {j}) is covered by no triple; "
                                 "the system is incomplete")
            grid[i - 1][j - 1] = k
            grid[j - 1][i - 1] = k
    return LatinSquare.from_rows(grid)


class CompletionBudgetError(Exception):
    """Greedy completion ran out of restarts; carries the best partial system."""

    def __init__(self, message: str, best_partial: TripleSystem):
        super().__init__(message)
        self.best_partial = best_partial


def complete_random_greedy(n: int, max_restarts: int, seed: int) -> TripleSystem:
    """Run the uniform random greedy process to completion, restarting on dead
    ends, and return the first complete system found."""
    if n < 3 or n % 6 not in (1, 3):
        raise ValueError(f"complete systems need n == 1 or 3 (mod 6), got {n}")
    rng = random.Random(seed)
    target = n * (n - 1) // 6
    best: list[Triple] = []
    for _ in range(max_restarts):
        chosen: list[Triple] = []
        covered: set[tuple[int, int]] = set()
        pool = list(combinations(range(1, n + 1), 3))
        while pool and len(chosen) < target:
            idx = rng.randrange(len(pool))
            t = pool[idx]
            pool[idx] = pool[-1]
            pool.pop()
            pairs = ((t[0], t[1]), (t[0], t[2]), (t[1], t[2]))
            if any(p in covered for p in pairs):
                continue  # stale entry; drop and redraw
            chosen.append(t)
            covered.update(pairs)
        if len(chosen) == target:
            return TripleSystem.from_triples(n, chosen)
        if len(chosen) > len(best):
            best = chosen
    raise CompletionBudgetError(
        f"no complete system of order {n} in {max_restarts} restarts "
        f"(best partial: {len(best)}/{target} triples)",
        TripleSystem.from_triples(n, best),
    )


# ---------------------------------------------------------------------------
# Jacobson-Matthews walk
# ---------------------------------------------------------------------------


@njit(cache=True)
def _jm_walk(n: int, burn_in: int, seed: int) -> np.ndarray:  # pragma: no cover
    np.random.seed(seed)
    f = np.zeros((n, n, n), dtype=np.int8)
    for i in range(n):
        for j in range(n):
            f[i, j, (i + j) % n] = 1
    improper = False
    nx = ny = nz = 0  # the -1 cell while improper
    moves = 0
    while moves < burn_in or improper:
        if not improper:
            while True:
                x = np.random.randint(n)
                y = np.random.randint(n)
                z = np.random.randint(n)
                if f[x, y, z] == 0:
                    break
            x2 = y2 = z2 = 0
            for w in range(n):
                if f[w, y, z] == 1:
                    x2 = w
                if f[x, w, z] == 1:
                    y2 = w
                if f[x, y, w] == 1:
                    z2 = w
        else:
            x, y, z = nx, ny, nz
            # each line through the -1 cell holds exactly two 1s; pick one
            a = -1
            b = -1
            for w in range(n):
                if f[w, y, z] == 1:
                    if a < 0:
                        a = w
                    else:
                        b = w
            x2 = a if np.random.randint(2) == 0 else b
            a = -1
            b = -1
            for w in range(n):
                if f[x, w, z] == 1:
                    if a < 0:
                        a = w
                    else:
                        b = w
            y2 = a if np.random.randint(2) == 0 else b
            a = -1
            b = -1
            for w in range(n):
                if f[x, y, w] == 1:
                    if a < 0:
                        a = w
                    else:
                        b = w
            z2 = a if np.random.randint(2) == 0 else b
        f[x, y, z] += 1
        f[x2, y, z] -= 1
        f[x, y2, z] -= 1
        f[x, y, z2] -= 1
        f[x2, y2, z] += 1
        f[x2, y, z2] += 1
        f[x, y2, z2] += 1
        f[x2, y2, z2] -= 1
        if f[x2, y2, z2] < 0:
            improper = True
            nx, ny, nz = x2, y2, z2
        else:
            improper = False
        moves += 1
    grid = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if f[i, j, k] == 1:
                    grid[i, j] = k + 1
    return grid


def default_burn_in(n: int) -> int:
    return 2 * n ** 3


def jm_sample(n: int, burn_in: int | None = None, seed: int = 0) -> LatinSquare:
    """Near-uniform random order-n square from the subcube walk.

    Runs ``burn_in`` accepted moves (default 2n^3) from the cyclic table, then
    keeps walking until the square is proper.  Identical (n, burn_in, seed)
    give identical output.
    """
    if n < 1:
        raise ValueError(f"order must be >= 1, got {n}")
    if n == 1:
        return LatinSquare.from_rows([[1]])
    if burn_in is None:
        burn_in = default_burn_in(n)
    # the underlying generator takes 32-bit seeds; fold the upper half in
    seed32 = (int(seed) ^ (int(seed) >> 32)) & 0xFFFFFFFF
    grid = _jm_walk(n, int(burn_in), seed32)
    return LatinSquare.from_rows(grid.tolist())
