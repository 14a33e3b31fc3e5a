"""Classical references: brute-force Kemeny oracle and KwikSort."""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import ProblemTooLargeError
from ..utils.parallel import ParallelProcessor
from .pairwise import PairMatrix, build_comparison
from .ranking import Dataset, Ranking

logger = logging.getLogger(__name__)

DEFAULT_BRUTE_FORCE_CAP = 9
DEFAULT_REACHABLE_CAP = 8
CHUNK_SIZE = 40320
COST_TOL = 1e-9


@dataclass(frozen=True)
class OracleResult:
    """Minimum cumulative KT and every ranking attaining it."""

    min_kt: float
    optima: FrozenSet[Ranking]

    def sorted_optima(self) -> List[Ranking]:
        return sorted(self.optima, key=lambda r: r.order)

    def to_dict(self) -> dict:
        return {"min_kt": self.min_kt, "optima": [list(r.order) for r in self.sorted_optima()]}


def ranking_costs(pm: PairMatrix, orders: np.ndarray) -> np.ndarray:
    """Cumulative KT of many rankings at once: sum of w[b, a] over a placed before b."""
    orders = np.atleast_2d(orders)
    positions = np.argsort(orders, axis=1)
    before = positions[:, :, None] < positions[:, None, :]
    return np.einsum("rab,ba->r", before.astype(float), pm.w)


def _permutation_chunks(n: int) -> List[np.ndarray]:
    perms = itertools.permutations(range(n))
    chunks = []
    while True:
        block = list(itertools.islice(perms, CHUNK_SIZE))
        if not block:
            return chunks
        chunks.append(np.array(block, dtype=np.int64))


def brute_force(ds: Dataset, cap: int = DEFAULT_BRUTE_FORCE_CAP,
                processor: Optional[ParallelProcessor] = None) -> OracleResult:
    """Score all n! rankings and keep every minimizer."""
    if ds.n > cap:
        raise ProblemTooLargeError("Brute force candidate count", ds.n, cap)
    pm = build_comparison(ds)
    chunks = _permutation_chunks(ds.n)
    processor = processor or ParallelProcessor()
    costs = processor.map_ordered(lambda chunk: ranking_costs(pm, chunk), chunks)

    min_kt = min(float(c.min()) for c in costs)
    limit = min_kt + COST_TOL * max(1.0, abs(min_kt))
    optima = frozenset(
        Ranking(tuple(int(v) for v in row))
        for chunk, cost in zip(chunks, costs)
        for row in chunk[cost <= limit]
    )
    logger.debug("Brute force over %d candidates: min %g, %d optima", ds.n, min_kt, len(optima))
    return OracleResult(min_kt, optima)


PivotRule = Callable[[Sequence[int]], int]


def kwiksort(pm: PairMatrix, seed: Optional[int] = None, pivot_rule: Optional[PivotRule] = None) -> Ranking:
    """Randomized pivot partitioning on the pairwise majority.

    An element goes before the pivot when a majority prefers it, after when
    a majority prefers the pivot, and to a random side on a tie.
    ``pivot_rule`` replaces the uniform pivot choice.
    """
    rng = np.random.default_rng(seed)

    def choose(items: Sequence[int]) -> int:
        if pivot_rule is not None:
            return pivot_rule(items)
        return items[int(rng.integers(len(items)))]

    def sort(items: List[int]) -> List[int]:
        if len(items) <= 1:
            return items
        pivot = choose(items)
        left, right = [], []
        for e in items:
            if e == pivot:
                continue
            prefers = pm.majority_prefers(e, pivot)
            if prefers is None:
                prefers = bool(rng.random() < 0.5)
            if prefers:
                left.append(e)
            else:
                right.append(e)
        return sort(left) + [pivot] + sort(right)

    return Ranking(tuple(sort(list(range(pm.n)))))


def kwiksort_reachable(pm: PairMatrix, cap: int = DEFAULT_REACHABLE_CAP) -> FrozenSet[Ranking]:
    """Every ranking KwikSort can output, over all pivots and tie resolutions."""
    if pm.n > cap:
        raise ProblemTooLargeError("KwikSort reachability candidate count", pm.n, cap)
    w = pm.w

    @lru_cache(maxsize=None)
    def reach(items: FrozenSet[int]) -> FrozenSet[Tuple[int, ...]]:
        if len(items) <= 1:
            return frozenset({tuple(items)})
        out = set()
        for pivot in sorted(items):
            left, right, tied = [], [], []
            for e in sorted(items - {pivot}):
                if w[e, pivot] > w[pivot, e]:
                    left.append(e)
                elif w[pivot, e] > w[e, pivot]:
                    right.append(e)
                else:
                    tied.append(e)
            for sides in itertools.product((0, 1), repeat=len(tied)):
                lower = frozenset(left + [t for t, s in zip(tied, sides) if s == 0])
                upper = frozenset(right + [t for t, s in zip(tied, sides) if s == 1])
                for head in reach(lower):
                    for tail in reach(upper):
                        out.add(head + (pivot,) + tail)
        return frozenset(out)

    return frozenset(Ranking(order) for order in reach(frozenset(range(pm.n))))
