"""Recovering removed pairs from the decided ones by majority over third candidates."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, Tuple

from ..core.pairwise import UNDECIDED, Pair, UpperTriBits
from ..errors import InvalidArgumentError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class InferenceResult:
    """Bits after inference; ``unresolved`` lists pairs that stayed undecided (a stall)."""

    bits: UpperTriBits
    unresolved: Tuple[Pair, ...] = ()

    @property
    def stalled(self) -> bool:
        return bool(self.unresolved)


def _precedes(values: Dict[Pair, int], a: int, c: int) -> int:
    """1 if a is placed before c, 0 if after, UNDECIDED if unknown."""
    if a < c:
        return values[(a, c)]
    v = values[(c, a)]
    return UNDECIDED if v == UNDECIDED else 1 - v


def vote_of_third(values: Dict[Pair, int], a: int, b: int, c: int) -> int:
    """+1 when c sits between a and b with a first, -1 when b first, else 0."""
    ac = _precedes(values, a, c)
    bc = _precedes(values, b, c)
    if ac == UNDECIDED or bc == UNDECIDED:
        return 0
    if ac == 1 and bc == 0:
        return 1
    if ac == 0 and bc == 1:
        return -1
    return 0


def infer_removed(x: UpperTriBits, removed: Iterable[Pair]) -> InferenceResult:
    """Fill undecided pairs with the sign of the summed third-candidate votes.

    Sweeps repeat, using freshly resolved pairs, until everything is decided
    or a sweep makes no progress. A zero sum leaves the pair undecided.
    """
    removed = sorted(set(removed))
    if set(x.undecided_pairs()) != set(removed):
        raise InvalidArgumentError(
            f"Undecided slots {x.undecided_pairs()} do not match removed pairs {removed}"
        )
    values = x.as_dict()
    pending = removed
    sweeps = 0
    while pending:
        sweeps += 1
        still = []
        for a, b in pending:
            total = sum(vote_of_third(values, a, b, c) for c in range(x.n) if c != a and c != b)
            if total > 0:
                values[(a, b)] = 1
            elif total < 0:
                values[(a, b)] = 0
            else:
                still.append((a, b))
        if len(still) == len(pending):
            break
        pending = still
    if pending:
        logger.debug("Inference stalled after %d sweeps on %s", sweeps, pending)
    return InferenceResult(UpperTriBits.from_pairs(x.n, values), tuple(pending))
