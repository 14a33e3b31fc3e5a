"""Transitivity violations (3-cycles) in bit matrices and in the majority matrix."""
from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, List, Sequence, Set, Tuple

import numpy as np

from ..errors import InvalidArgumentError, InvalidStateError
from .pairwise import BiasMatrix, Pair, UpperTriBits

logger = logging.getLogger(__name__)

PARITIES = ("odd", "even")


@dataclass(frozen=True, order=True)
class Cycle:
    """Candidate triple (i, j, k), i < j < k, whose pair bits are not transitive."""

    i: int
    j: int
    k: int

    def __post_init__(self):
        if not 0 <= self.i < self.j < self.k:
            raise InvalidArgumentError(f"Cycle indices must satisfy i < j < k: {(self.i, self.j, self.k)}")

    def pairs(self) -> Tuple[Pair, Pair, Pair]:
        return ((self.i, self.j), (self.j, self.k), (self.i, self.k))

    def touches(self, pairs: Iterable[Pair]) -> bool:
        return not set(self.pairs()).isdisjoint(pairs)

    def __str__(self) -> str:
        return f"{self.i},{self.j},{self.k}"

    @classmethod
    def parse(cls, text: str) -> "Cycle":
        i, j, k = (int(v) for v in text.split(","))
        return cls(i, j, k)


@dataclass(frozen=True, eq=False)
class OmegaMatrix:
    """Majority matrix: omega[i, j] = 1 if i beats j, 0 if j beats i, 0.5 on a tie."""

    n: int
    omega: np.ndarray

    def __post_init__(self):
        omega = np.array(np.triu(self.omega, 1), dtype=float)
        omega.setflags(write=False)
        object.__setattr__(self, "omega", omega)

    def __getitem__(self, pair: Pair) -> float:
        return float(self.omega[pair])

    def values(self) -> np.ndarray:
        return self.omega[np.triu_indices(self.n, 1)]


def triple_count(n: int) -> int:
    """Number of candidate triples, the upper bound on cycles: n(n-1)(n-2)/6."""
    return math.comb(n, 3) if n >= 3 else 0


def _triple_mask(n: int) -> np.ndarray:
    idx = np.arange(n)
    return (idx[:, None, None] < idx[None, :, None]) & (idx[None, :, None] < idx[None, None, :])


def _cycles_from_mask(mask: np.ndarray) -> Set[Cycle]:
    return {Cycle(int(i), int(j), int(k)) for i, j, k in np.argwhere(mask)}


def omega(b: BiasMatrix) -> OmegaMatrix:
    """Heaviside of -b with Theta(0) = 1/2."""
    values = np.where(b.b < 0, 1.0, np.where(b.b > 0, 0.0, 0.5))
    return OmegaMatrix(b.n, values)


def initial_cycles(om: OmegaMatrix, parity: str) -> Set[Cycle]:
    """Triples whose majority relation is cyclic.

    The odd rule needs a strict majority on all three pairs; the even rule
    also flags triples where ties (0.5) could close a cycle.
    """
    if parity not in PARITIES:
        raise InvalidArgumentError(f"Parity must be one of {PARITIES}, got {parity}")
    w = om.omega
    ij = w[:, :, None]
    ik = w[:, None, :]
    jk = w[None, :, :]
    if parity == "odd":
        hit = ((ij == 0) & (ik == 1) & (jk == 0)) | ((ij == 1) & (ik == 0) & (jk == 1))
    else:
        hit = ((ij != 1) & (ik != 0) & (jk != 1)) | ((ij != 0) & (ik != 1) & (jk != 0))
    cycles = _cycles_from_mask(hit & _triple_mask(om.n))
    logger.debug("Found %d initial cycles (%s parity) among %d triples", len(cycles), parity, triple_count(om.n))
    return cycles


def detect_cycles(x: UpperTriBits) -> Set[Cycle]:
    """All triples with x_ij = x_jk = 1, x_ik = 0 or the mirrored x_ij = x_jk = 0, x_ik = 1."""
    if not x.is_complete:
        raise InvalidStateError(f"Cannot scan undecided bits {x} for cycles")
    m = x.upper_matrix()
    ij = m[:, :, None]
    jk = m[None, :, :]
    ik = m[:, None, :]
    hit = ((ij == 1) & (jk == 1) & (ik == 0)) | ((ij == 0) & (jk == 0) & (ik == 1))
    return _cycles_from_mask(hit & _triple_mask(x.n))


@dataclass(frozen=True)
class PruneStep:
    """One removal made while pruning: the cycle and the threshold it was removed at."""

    cycle: Cycle
    threshold: int


def prune_with_log(cycles: Iterable[Cycle], k: int) -> Tuple[Set[Cycle], List[PruneStep]]:
    """Prune cycles whose pairs are all covered by at least k other cycles.

    Thresholds are applied from the highest reachable coverage down to k and
    each threshold is scanned lexicographically until nothing changes, so the
    result for k is always a pruning of the result for k + 1.
    """
    if k < 1:
        raise InvalidArgumentError(f"Prune threshold must be at least 1, got {k}")
    retained = set(cycles)
    coverage = Counter(p for cycle in retained for p in cycle.pairs())
    top = max(coverage.values(), default=0) - 1
    steps: List[PruneStep] = []
    for threshold in range(top, k - 1, -1):
        changed = True
        while changed:
            changed = False
            for cycle in sorted(retained):
                if all(coverage[p] - 1 >= threshold for p in cycle.pairs()):
                    retained.remove(cycle)
                    coverage.subtract(cycle.pairs())
                    steps.append(PruneStep(cycle, threshold))
                    logger.debug("Pruned cycle %s at coverage threshold %d", cycle, threshold)
                    changed = True
    return retained, steps


def prune_for_embedding(cycles: Iterable[Cycle], k: int) -> Set[Cycle]:
    """Drop redundant cycles so fewer penalty terms are needed."""
    retained, steps = prune_with_log(cycles, k)
    if steps:
        logger.info("Pruned %d of %d cycles (k=%d)", len(steps), len(steps) + len(retained), k)
    return retained


def intersect_runs(sets: Sequence[Set[Cycle]]) -> Set[Cycle]:
    """Cycles present in every run."""
    if not sets:
        raise InvalidArgumentError("intersect_runs needs at least one cycle set")
    return set(reduce(lambda a, b: set(a) & set(b), sets))
