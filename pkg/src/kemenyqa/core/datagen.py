"""Seeded dataset generators and embedded fixtures."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..errors import InvalidArgumentError
from .ranking import Dataset, ListKind, Ranking

logger = logging.getLogger(__name__)

MODES = ("synthetic", "simplified")

# Columns are votes, rows are ranks (most preferred first)
_KWIKSORT_TRAP_COLUMNS = (
    (0, 2, 1, 3, 4),
    (2, 0, 4, 1, 3),
    (0, 1, 4, 2, 3),
    (3, 0, 2, 1, 4),
    (2, 1, 3, 0, 4),
    (2, 3, 0, 1, 4),
    (0, 1, 2, 4, 3),
    (3, 4, 0, 2, 1),
    (1, 4, 3, 0, 2),
    (2, 3, 0, 4, 1),
    (4, 3, 2, 0, 1),
)


@dataclass(frozen=True)
class GenSpec:
    """What to generate.

    ``kind`` other than complete truncates each vote to a uniformly drawn
    length in [k_min, n]: a prefix for k-top lists, an order-preserving
    subset for partial lists. ``max_list_weight`` > 1 draws integer vote
    weights in [1, max_list_weight].
    """

    n: int
    votes: int = 11
    seed: Optional[int] = None
    mode: str = "synthetic"
    min_sublists: int = 3
    kind: ListKind = ListKind.COMPLETE
    k_min: int = 1
    max_list_weight: int = 1

    def __post_init__(self):
        object.__setattr__(self, "kind", ListKind(self.kind))
        if self.n < 1:
            raise InvalidArgumentError(f"n must be positive, got {self.n}")
        if self.votes < 1:
            raise InvalidArgumentError(f"votes must be positive, got {self.votes}")
        if self.mode not in MODES:
            raise InvalidArgumentError(f"mode must be one of {MODES}, got {self.mode}")
        if self.mode == "simplified" and not 3 <= self.min_sublists <= self.n:
            raise InvalidArgumentError(
                f"simplified mode needs 3 <= min_sublists <= n, got min_sublists={self.min_sublists}, n={self.n}"
            )
        if not 1 <= self.k_min <= self.n:
            raise InvalidArgumentError(f"k_min must lie in [1, {self.n}], got {self.k_min}")
        if self.max_list_weight < 1:
            raise InvalidArgumentError(f"max_list_weight must be at least 1, got {self.max_list_weight}")


def _finish(spec: GenSpec, orders: List[np.ndarray], rng: np.random.Generator) -> Dataset:
    """Apply list kind and weights to complete orders."""
    if spec.kind is not ListKind.COMPLETE:
        cut = []
        for order in orders:
            length = int(rng.integers(spec.k_min, spec.n + 1))
            if spec.kind is ListKind.KTOP:
                cut.append(order[:length])
            else:
                keep = np.sort(rng.choice(spec.n, size=length, replace=False))
                cut.append(order[keep])
        orders = cut
    if spec.max_list_weight > 1:
        weights = [float(w) for w in rng.integers(1, spec.max_list_weight + 1, size=len(orders))]
    else:
        weights = None
    return Dataset.from_orders([tuple(int(c) for c in o) for o in orders], spec.n, spec.kind, weights)


def gen_synthetic(spec: GenSpec) -> Dataset:
    """Independent uniform permutations of [0, n)."""
    if spec.mode != "synthetic":
        raise InvalidArgumentError(f"gen_synthetic needs mode=synthetic, got {spec.mode}")
    rng = np.random.default_rng(spec.seed)
    orders = [rng.permutation(spec.n) for _ in range(spec.votes)]
    return _finish(spec, orders, rng)


def gen_simplified_with_cuts(spec: GenSpec) -> Tuple[Dataset, List[Tuple[int, ...]]]:
    """Like gen_simplified, also returning each vote's cut points."""
    if spec.mode != "simplified":
        raise InvalidArgumentError(f"gen_simplified needs mode=simplified, got {spec.mode}")
    rng = np.random.default_rng(spec.seed)
    orders, all_cuts = [], []
    for vote in range(spec.votes):
        count = int(rng.integers(spec.min_sublists - 1, spec.n))
        cuts = tuple(int(c) for c in np.sort(rng.choice(np.arange(1, spec.n), size=count, replace=False)))
        blocks = np.split(np.arange(spec.n), cuts)
        orders.append(np.concatenate([rng.permutation(block) for block in blocks]))
        all_cuts.append(cuts)
        logger.debug("Vote %d cut at %s", vote, list(cuts))
    return _finish(spec, orders, rng), all_cuts


def gen_simplified(spec: GenSpec) -> Dataset:
    """Identity list cut into contiguous sublists, each permuted independently."""
    return gen_simplified_with_cuts(spec)[0]


def generate(spec: GenSpec) -> Dataset:
    if spec.mode == "simplified":
        return gen_simplified(spec)
    return gen_synthetic(spec)


def appendix_e_dataset() -> Dataset:
    """Five candidates, eleven votes: no KwikSort run reaches the Kemeny optimum."""
    return Dataset(5, tuple(Ranking(column) for column in _KWIKSORT_TRAP_COLUMNS))


kwiksort_trap_dataset = appendix_e_dataset

# "kwiksort-trap" is an alias of "appendix-e"
FIXTURES = {"appendix-e": appendix_e_dataset, "kwiksort-trap": appendix_e_dataset}


def unanimous_dataset(order: Sequence[int], votes: int = 3) -> Dataset:
    """Every vote identical."""
    return Dataset.from_orders([tuple(order)] * votes, len(order))
