"""Solver options, traces and solutions."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from ..core.cycles import PARITIES
from ..core.pairwise import Pair, UpperTriBits
from ..core.ranking import Ranking
from ..errors import InvalidArgumentError
from ..samplers.base import SampleSet

PENALTY_MODES = ("minimal", "bias-scaled")


@dataclass(frozen=True)
class IterOptions:
    """Knobs for the iterative and pair-removal loops.

    ``max_cycle_updates`` None runs until the output is cycle-free (or
    ``max_iterations`` sampler rounds pass). ``parity`` and
    ``initial_penalty`` None pick a value from the dataset.
    """

    max_cycle_updates: Optional[int] = None
    parity: Optional[str] = None
    initial_penalty: Optional[str] = None
    double_check: int = 1
    prune_k: Optional[int] = None
    epsilon: float = 0.5
    seed: Optional[int] = 0
    max_iterations: int = 100
    max_restarts: int = 3
    min_gap: int = 2

    def __post_init__(self):
        if self.max_cycle_updates is not None and self.max_cycle_updates < 1:
            raise InvalidArgumentError(f"max_cycle_updates must be at least 1, got {self.max_cycle_updates}")
        if self.parity not in (None, "auto", *PARITIES):
            raise InvalidArgumentError(f"Unknown parity: {self.parity}")
        if self.initial_penalty not in (None, *PENALTY_MODES):
            raise InvalidArgumentError(f"Unknown initial penalty mode: {self.initial_penalty}")
        if self.double_check < 1:
            raise InvalidArgumentError(f"double_check must be at least 1, got {self.double_check}")
        if self.prune_k is not None and self.prune_k < 1:
            raise InvalidArgumentError(f"prune_k must be at least 1, got {self.prune_k}")
        if not self.epsilon > 0:
            raise InvalidArgumentError(f"epsilon must be positive, got {self.epsilon}")
        if self.max_iterations < 1 or self.max_restarts < 0:
            raise InvalidArgumentError("max_iterations must be positive and max_restarts nonnegative")
        if self.min_gap < 2:
            raise InvalidArgumentError(f"min_gap must be at least 2, got {self.min_gap}")


@dataclass(frozen=True)
class IterationRecord:
    """Summary of one sampler round."""

    iteration: int
    ledger_size: int
    new_cycles: int
    bumped_cycles: int
    best_energy: float
    best_kt: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "iteration": self.iteration,
            "ledger_size": self.ledger_size,
            "new_cycles": self.new_cycles,
            "bumped_cycles": self.bumped_cycles,
            "best_energy": self.best_energy,
            "best_kt": self.best_kt,
        }


@dataclass(frozen=True)
class Solution:
    """Outcome of a solver pipeline."""

    ranking: Ranking
    bits: UpperTriBits
    cumulative_kt: float
    normalized_kt: float
    energy: float
    num_occ: int
    iterations: int
    ledger: Dict[str, float]
    converged: bool
    seed: Optional[int]
    method: str = "base"
    trace: Tuple[IterationRecord, ...] = ()
    removed_pairs: Tuple[Pair, ...] = ()
    restarts: int = 0
    samples: Optional[SampleSet] = field(default=None, repr=False, compare=False)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ranking": list(self.ranking.order),
            "bits": list(self.bits.bits),
            "cumulative_kt": self.cumulative_kt,
            "normalized_kt": self.normalized_kt,
            "energy": self.energy,
            "num_occ": self.num_occ,
            "iterations": self.iterations,
            "ledger": dict(self.ledger),
            "converged": self.converged,
            "seed": self.seed,
            "trace": [record.to_dict() for record in self.trace],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)
