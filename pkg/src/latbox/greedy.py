"""First stage of the random greedy triple process, with box trackers.

At each step a triple is drawn uniformly from the legal ones, i.e. those
sharing at most one vertex with every previously chosen triple (equivalently,
none of the triple's pairs is covered yet).  The first stage runs for
floor(lambda * n^2) steps.  Draws use rejection sampling from all C(n,3)
triples against the covered-pair set; in the first stage the legal fraction
stays near 1, so rejections are rare.  A long rejection streak triggers an
exhaustive scan, which either produces a uniform choice or flags the process
as stuck.

Trackers instrument a box A x B x C: a triple "meets" a set when it has at
least one vertex in it, an ABC triple meets all three sets, and the tracker
maintains the count of ABC triples that are still legal.  tail_bound and
proof_budget evaluate the companion concentration formulas, with every
vanishing term set to zero unless a slack is passed explicitly.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

__all__ = [
    "GreedyConfig",
    "GreedyState",
    "BoxTracker",
    "ProofBudget",
    "run_first_stage",
    "legal_fraction",
    "tail_bound",
    "proof_budget",
    "DEFAULT_LAMBDA",
]

DEFAULT_LAMBDA = 1.0 / 1500.0

# exhaustive-scan fallback after this many consecutive rejected draws
_REJECTION_STREAK_LIMIT = 1000

Triple = tuple[int, int, int]
Pair = tuple[int, int]

TYPE_KEYS = ("abc", "ab", "ac", "bc", "other")


@dataclass(frozen=True)
class GreedyConfig:
    n: int
    lam: float = DEFAULT_LAMBDA
    seed: int = 0
    step_override: int | None = None

    def __post_init__(self) -> None:
        if self.n < 3:
            raise ValueError(f"order must be >= 3, got {self.n}")
        if self.lam <= 0:
            raise ValueError(f"lambda must be positive, got {self.lam}")

    @property
    def steps(self) -> int:
        if self.step_override is not None:
            return self.step_override
        # guard against float dust just below an exact integer (e.g. n^2/1500)
        return int(math.floor(self.lam * self.n * self.n + 1e-9))


@dataclass
class GreedyState:
    n: int
    chosen: list[Triple] = field(default_factory=list)
    covered_pairs: set[Pair] = field(default_factory=set)
    step: int = 0
    stuck: bool = False


def _pairs(t: Sequence[int]) -> tuple[Pair, Pair, Pair]:
    a, b, c = t
    return (a, b), (a, c), (b, c)


def _count_triples(m: int) -> int:
    return m * (m - 1) * (m - 2) // 6


def _meets_count(n: int, a: frozenset, b: frozenset, c: frozenset) -> int:
    """Number of triples meeting all of a, b, c, by inclusion-exclusion over
    the triples avoiding each set (a triple avoids a set iff it lies in the
    complement).  Exact; equals the direct enumeration."""
    ca = n - len(a)
    cb = n - len(b)
    cc = n - len(c)
    cab = n - len(a | b)
    cac = n - len(a | c)
    cbc = n - len(b | c)
    cabc = n - len(a | b | c)
    return (_count_triples(n)
            - _count_triples(ca) - _count_triples(cb) - _count_triples(cc)
            + _count_triples(cab) + _count_triples(cac) + _count_triples(cbc)
            - _count_triples(cabc))


class BoxTracker:
    """Incremental count of legal box triples during one greedy run."""

    def __init__(self, n: int, a: Iterable[int], b: Iterable[int], c: Iterable[int]):
        self.n = n
        self.a = frozenset(int(v) for v in a)
        self.b = frozenset(int(v) for v in b)
        self.c = frozenset(int(v) for v in c)
        for part in (self.a, self.b, self.c):
            if any(not (1 <= v <= n) for v in part):
                raise ValueError(f"tracker part not within 1..{n}")
        self.f_initial = _meets_count(n, self.a, self.b, self.c)
        self.f_legal = self.f_initial
        self.type_counts: dict[str, int] = {k: 0 for k in TYPE_KEYS}
        self._assert_sandwich()

    def _assert_sandwich(self) -> None:
        vol = len(self.a) * len(self.b) * len(self.c)
        dup = (len(self.a & self.b) * len(self.c)
               + len(self.a & self.c) * len(self.b)
               + len(self.b & self.c) * len(self.a))
        if self.f_initial < max(0, vol - dup) // 6:
            raise AssertionError("initial box-triple count below the ordered-pick bound")
        disjoint = (not (self.a & self.b) and not (self.a & self.c)
                    and not (self.b & self.c))
        # the volume upper bound only holds when every box triple has one
        # vertex per part, i.e. for pairwise disjoint parts
        if disjoint and self.f_initial > vol:
            raise AssertionError("initial box-triple count above the box volume")

    def is_box_triple(self, t: Sequence[int]) -> bool:
        s = set(t)
        return bool(s & self.a) and bool(s & self.b) and bool(s & self.c)

    def classify(self, t: Sequence[int]) -> str:
        s = set(t)
        ma, mb, mc = bool(s & self.a), bool(s & self.b), bool(s & self.c)
        if ma and mb and mc:
            return "abc"
        if ma and mb:
            return "ab"
        if ma and mc:
            return "ac"
        if mb and mc:
            return "bc"
        return "other"

    def sizes(self) -> tuple[int, int, int]:
        return len(self.a), len(self.b), len(self.c)


def _newly_illegal(t: Triple, covered: set[Pair], n: int):
    """Triples legal before ``t`` is chosen and illegal after, including ``t``.

    Any such triple shares a pair with t, so it is t itself or {a, b, w} for a
    pair (a, b) of t and w outside t; the latter was legal iff (a, w) and
    (b, w) were both uncovered.  Distinct pairs of t give distinct triples.
    """
    yield t
    tset = set(t)
    for a, b in _pairs(t):
        for w in range(1, n + 1):
            if w in tset:
                continue
            pa = (a, w) if a < w else (w, a)
            pb = (b, w) if b < w else (w, b)
            if pa not in covered and pb not in covered:
                yield tuple(sorted((a, b, w)))


def run_first_stage(cfg: GreedyConfig,
                    trackers: Sequence[BoxTracker] = (),
                    on_step=None) -> tuple[GreedyState, list[BoxTracker]]:
    """Run floor(lambda n^2) uniform draws from the legal-triple set.

    Stops early with ``stuck`` set when no legal triple remains.  Trackers are
    updated in place: the chosen triple's type count, and the decrement of
    f_legal by the newly invalidated box triples.  ``on_step(state, triple)``
    is called after every completed step.
    """
    rng = random.Random(cfg.seed)
    state = GreedyState(cfg.n)
    trackers = list(trackers)
    pop = range(1, cfg.n + 1)
    for _ in range(cfg.steps):
        t = None
        streak = 0
        while t is None:
            cand = tuple(sorted(rng.sample(pop, 3)))
            if all(p not in state.covered_pairs for p in _pairs(cand)):
                t = cand
                break
            streak += 1
            if streak >= _REJECTION_STREAK_LIMIT:
                legal = [c for c in combinations(pop, 3)
                         if all(p not in state.covered_pairs for p in _pairs(c))]
                if not legal:
                    state.stuck = True
                    return state, trackers
                t = legal[rng.randrange(len(legal))]
        for tr in trackers:
            tr.type_counts[tr.classify(t)] += 1
            lost = sum(1 for cand in _newly_illegal(t, state.covered_pairs, cfg.n)
                       if tr.is_box_triple(cand))
            tr.f_legal -= lost
        state.covered_pairs.update(_pairs(t))
        state.chosen.append(t)
        state.step += 1
        if on_step is not None:
            on_step(state, t)
    return state, trackers


def legal_fraction(state: GreedyState, a: Iterable[int], b: Iterable[int],
                   c: Iterable[int]) -> float:
    """Ground-truth recount: fraction of box triples still legal.

    Enumerates all C(n,3) triples, so it is independent of the incremental
    tracker bookkeeping it is used to check.
    """
    aset = frozenset(int(v) for v in a)
    bset = frozenset(int(v) for v in b)
    cset = frozenset(int(v) for v in c)
    covered = state.covered_pairs
    initial = 0
    legal = 0
    for t in combinations(range(1, state.n + 1), 3):
        s = set(t)
        if not (s & aset and s & bset and s & cset):
            continue
        initial += 1
        if all(p not in covered for p in _pairs(t)):
            legal += 1
    if initial == 0:
        raise ValueError("no box triples exist; fraction is undefined")
    return legal / initial


def tail_bound(delta: float, n_vars: int, p: float) -> float:
    """Upper tail exp(-delta^2/(2+delta) * N p) for a sum of N Bernoulli
    variables whose joint success probabilities are dominated by p^|S|."""
    if delta < 0:
        raise ValueError(f"delta must be >= 0, got {delta}")
    if n_vars < 1:
        raise ValueError(f"N must be >= 1, got {n_vars}")
    if not (0 < p < 1):
        raise ValueError(f"p must lie in (0, 1), got {p}")
    return math.exp(-delta * delta / (2 + delta) * n_vars * p)


@dataclass(frozen=True)
class ProofBudget:
    """Diagnostic values for the first-stage counting argument; nothing here
    is asserted as an inequality."""

    q: float
    mean_bound: float
    threshold_ratio: float
    tail_bound_value: float


def proof_budget(lam: float, n: int, a: int, b: int, f: int,
                 slack: float = 0.0) -> ProofBudget:
    """Evaluate the first-stage budget formulas with vanishing terms set to
    ``slack`` (default 0).

    q bounds each step's chance of drawing a triple meeting both index sets;
    mean_bound = 6*lam*a*b/(1-18*lam-slack) bounds the expected number of such
    draws; threshold_ratio is (a*b/108)/mean_bound; tail_bound_value is the
    resulting tail probability at f box triples.
    """
    if min(a, b, f) < 1 or n < 3:
        raise ValueError("sizes must be >= 1 and n >= 3")
    denom_asym = 1 - 18 * lam - slack
    if denom_asym <= 0:
        raise ValueError(f"need 18*lambda + slack < 1, got lambda={lam}, slack={slack}")
    denom_exact = _count_triples(n) - 3 * lam * n ** 3
    if denom_exact <= 0:
        raise ValueError(f"C(n,3) - 3*lambda*n^3 must be positive, got {denom_exact}")
    q = a * b * n / denom_exact
    mean_bound = 6 * lam * a * b / denom_asym
    k = denom_asym / (648 * lam)
    tail = math.exp(-((k - 1) ** 2 / (k + 1)) * 6 * lam * f / (n * denom_asym))
    return ProofBudget(q=q, mean_bound=mean_bound, threshold_ratio=k,
                       tail_bound_value=tail)
