"""Choosing which pairs to take out of the QUBO."""
from __future__ import annotations

import logging
import math
from collections import Counter
from typing import Iterable, Optional, Set

import numpy as np

from ..core.cycles import Cycle, OmegaMatrix
from ..core.pairwise import BiasMatrix, Pair, UpperTriBits, all_pairs, reconstruct
from ..errors import InvalidArgumentError

logger = logging.getLogger(__name__)

STRATEGIES = ("prhb", "promega")


def _cycle_pairs(cycles: Iterable[Cycle]) -> Set[Pair]:
    return {p for cycle in cycles for p in cycle.pairs()}


def remove_pairs_prhb(b: BiasMatrix, ledger: Iterable[Cycle], count: int) -> Set[Pair]:
    """The ``count`` highest-|bias| pairs outside every ledger cycle, ties lexicographic."""
    if count < 0:
        raise InvalidArgumentError(f"count must be nonnegative, got {count}")
    protected = _cycle_pairs(ledger)
    candidates = sorted(
        (p for p in all_pairs(b.n) if p not in protected),
        key=lambda p: (-abs(b[p]), p),
    )
    chosen = set(candidates[:count])
    logger.debug("PRHB picked %s", sorted(chosen))
    return chosen


def remove_pairs_promega(om: OmegaMatrix, ledger: Iterable[Cycle], count: int,
                         min_gap: int = 2, seed: Optional[int] = 0) -> Set[Pair]:
    """Pairs placed far apart in the ranking suggested by the majority matrix.

    Ties in the majority matrix are settled with ``seed``. At most
    ceil(n / 2) chosen pairs may share a candidate.
    """
    if min_gap < 2:
        raise InvalidArgumentError(f"min_gap must be at least 2, got {min_gap}")
    if count < 0:
        raise InvalidArgumentError(f"count must be nonnegative, got {count}")
    if count == 0:
        return set()
    rng = np.random.default_rng(seed)
    values = om.values()
    resolved = np.where(values == 0.5, rng.integers(0, 2, size=values.size), values).astype(int)
    suggested = reconstruct(UpperTriBits(om.n, tuple(resolved)), tie_seed=seed)
    positions = suggested.positions(om.n)

    protected = _cycle_pairs(ledger)
    candidates = sorted(
        (p for p in all_pairs(om.n)
         if p not in protected and abs(int(positions[p[0]] - positions[p[1]])) >= min_gap),
        key=lambda p: (-abs(int(positions[p[0]] - positions[p[1]])), p),
    )
    per_candidate_cap = math.ceil(om.n / 2)
    touched: Counter = Counter()
    chosen: Set[Pair] = set()
    for i, j in candidates:
        if len(chosen) == count:
            break
        if touched[i] >= per_candidate_cap or touched[j] >= per_candidate_cap:
            continue
        chosen.add((i, j))
        touched.update((i, j))
    logger.debug("PR-Omega picked %s from ranking %s", sorted(chosen), list(suggested.order))
    return chosen
