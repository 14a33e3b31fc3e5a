"""Rankings, datasets and Kendall-Tau distances."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import ClassVar, Iterable, Optional, Sequence, Tuple

import numpy as np

from ..errors import InvalidArgumentError

logger = logging.getLogger(__name__)


class ListKind(str, Enum):
    """How a vote relates to the full candidate set."""

    COMPLETE = "complete"
    PARTIAL = "partial"
    KTOP = "ktop"


@dataclass(frozen=True)
class WeightScheme:
    """Per-pair position weight applied inside every vote.

    ``uniform`` weighs every pair 1, ``position`` weighs a pair at 1-based
    positions (i, j) by ``1 / (i + j) ** p`` and ``distance`` by ``|i - j|``.
    """

    variant: str = "uniform"
    p: float = 1.0

    VARIANTS: ClassVar[Tuple[str, ...]] = ("uniform", "position", "distance")

    def __post_init__(self):
        if self.variant not in self.VARIANTS:
            raise InvalidArgumentError(f"Unknown weight scheme: {self.variant}")
        if self.variant == "position" and not self.p > 0:
            raise InvalidArgumentError(f"Position weight exponent must be positive, got {self.p}")

    @classmethod
    def parse(cls, text: str) -> "WeightScheme":
        """Parse ``uniform``, ``distance``, ``position`` or ``position:<p>``."""
        name, _, param = text.strip().partition(":")
        if name != "position":
            if param:
                raise InvalidArgumentError(f"Weight scheme {name} takes no parameter")
            return cls(name)
        try:
            p = float(param) if param else 1.0
        except ValueError:
            raise InvalidArgumentError(f"Invalid position weight exponent: {param}")
        return cls("position", p)

    @property
    def is_uniform(self) -> bool:
        return self.variant == "uniform"

    def pair_weights(self, positions: np.ndarray) -> np.ndarray:
        """Return the n x n weight matrix for 1-based candidate positions."""
        pos = np.asarray(positions, dtype=float)
        if self.variant == "uniform":
            return np.ones((pos.size, pos.size))
        if self.variant == "distance":
            return np.abs(pos[:, None] - pos[None, :])
        return 1.0 / (pos[:, None] + pos[None, :]) ** self.p

    def __str__(self) -> str:
        if self.variant == "position":
            return f"position:{self.p:g}"
        return self.variant


@dataclass(frozen=True)
class Ranking:
    """An ordering of candidate indices, most preferred first."""

    order: Tuple[int, ...]
    kind: ListKind = ListKind.COMPLETE
    weight: float = 1.0

    def __post_init__(self):
        order = tuple(int(c) for c in self.order)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "kind", ListKind(self.kind))
        object.__setattr__(self, "weight", float(self.weight))
        if len(set(order)) != len(order):
            raise InvalidArgumentError(f"Ranking has repeated candidates: {list(order)}")
        if any(c < 0 for c in order):
            raise InvalidArgumentError(f"Ranking has negative candidates: {list(order)}")
        if not self.weight > 0:
            raise InvalidArgumentError(f"Ranking weight must be positive, got {self.weight}")

    @classmethod
    def identity(cls, n: int) -> "Ranking":
        return cls(tuple(range(n)))

    def __len__(self) -> int:
        return len(self.order)

    def __iter__(self):
        return iter(self.order)

    def is_complete_over(self, n: int) -> bool:
        return self.kind is ListKind.COMPLETE and sorted(self.order) == list(range(n))

    def validate_for(self, n: int) -> None:
        """Check the ranking is a valid vote over n candidates."""
        if any(c >= n for c in self.order):
            raise InvalidArgumentError(f"Ranking {list(self.order)} has candidates outside [0, {n})")
        if self.kind is ListKind.COMPLETE and len(self.order) != n:
            raise InvalidArgumentError(
                f"Complete ranking {list(self.order)} must list all {n} candidates"
            )

    def positions(self, n: int) -> np.ndarray:
        """1-based position of every candidate; absent candidates sit at len + 1."""
        pos = np.full(n, len(self.order) + 1, dtype=np.int64)
        pos[list(self.order)] = np.arange(1, len(self.order) + 1)
        return pos


@dataclass(frozen=True)
class Dataset:
    """A multiset of votes over n candidates."""

    n: int
    votes: Tuple[Ranking, ...]
    pair_weight: WeightScheme = field(default_factory=WeightScheme)

    def __post_init__(self):
        object.__setattr__(self, "votes", tuple(self.votes))
        if self.n < 1:
            raise InvalidArgumentError(f"Dataset needs at least one candidate, got n={self.n}")
        if not self.votes:
            raise InvalidArgumentError("Dataset needs at least one vote")
        for vote in self.votes:
            vote.validate_for(self.n)
        kinds = {vote.kind for vote in self.votes}
        if len(kinds) > 1:
            raise InvalidArgumentError(f"Votes mix list kinds: {sorted(k.value for k in kinds)}")

    @classmethod
    def from_orders(
        cls,
        orders: Iterable[Sequence[int]],
        n: Optional[int] = None,
        kind: ListKind = ListKind.COMPLETE,
        weights: Optional[Sequence[float]] = None,
        pair_weight: Optional[WeightScheme] = None,
    ) -> "Dataset":
        """Build a dataset from plain index sequences."""
        orders = [tuple(o) for o in orders]
        if weights is None:
            weights = [1.0] * len(orders)
        if len(weights) != len(orders):
            raise InvalidArgumentError("Need one weight per vote")
        if n is None:
            n = max((max(o) for o in orders if o), default=-1) + 1
        votes = tuple(Ranking(o, kind, w) for o, w in zip(orders, weights))
        return cls(n, votes, pair_weight or WeightScheme())

    @property
    def kind(self) -> ListKind:
        return self.votes[0].kind

    @property
    def total_weight(self) -> float:
        return float(sum(vote.weight for vote in self.votes))

    @property
    def is_unweighted(self) -> bool:
        return self.pair_weight.is_uniform and all(vote.weight == 1.0 for vote in self.votes)

    def with_pair_weight(self, scheme: WeightScheme) -> "Dataset":
        return Dataset(self.n, self.votes, scheme)


def vote_preferences(vote: Ranking, n: int, scheme: WeightScheme) -> np.ndarray:
    """Weighted preference indicators of one vote.

    Entry [i, j] is alpha(i, j) when the vote prefers i to j and 0 otherwise.
    Partial votes only speak about pairs with both candidates listed; k-top
    votes also prefer every listed candidate to every unlisted one.
    """
    positions = vote.positions(n)
    present = positions <= len(vote)
    before = positions[:, None] < positions[None, :]
    if vote.kind is ListKind.KTOP:
        mask = np.broadcast_to(present[:, None], (n, n))
    else:
        mask = present[:, None] & present[None, :]
    return scheme.pair_weights(positions) * (before & mask)


def precedence_matrix(r: Ranking, n: int) -> np.ndarray:
    """Boolean matrix with [a, b] set when a comes before b in r."""
    pos = r.positions(n)
    return pos[:, None] < pos[None, :]


def _require_complete(r: Ranking, n: int, name: str = "ranking") -> None:
    if not r.is_complete_over(n):
        raise InvalidArgumentError(f"{name} must be a complete ranking over {n} candidates: {list(r.order)}")


def kendall_tau(r1: Ranking, r2: Ranking) -> int:
    """Number of candidate pairs ordered differently by two complete rankings."""
    n = len(r1)
    if len(r2) != n:
        raise InvalidArgumentError(f"Rankings have different lengths: {len(r1)} != {len(r2)}")
    _require_complete(r1, n, "r1")
    _require_complete(r2, n, "r2")
    disagree = precedence_matrix(r1, n) != precedence_matrix(r2, n)
    return int(np.count_nonzero(np.triu(disagree, 1)))


def generalized_kt(ds: Dataset, r: Ranking, ws: WeightScheme) -> float:
    """Weighted disagreement between a complete ranking and every vote."""
    _require_complete(r, ds.n)
    after = precedence_matrix(r, ds.n).T
    total = 0.0
    for vote in ds.votes:
        total += vote.weight * float(np.sum(vote_preferences(vote, ds.n, ws) * after))
    return total


def cumulative_kt(ds: Dataset, r: Ranking) -> float:
    """Kemeny objective: summed (generalized) KT distance to all votes."""
    return generalized_kt(ds, r, ds.pair_weight)


def normalized_kt(ds: Dataset, r: Ranking) -> float:
    """Cumulative KT divided by total vote weight times n(n-1)/2."""
    pairs = ds.n * (ds.n - 1) / 2
    if pairs == 0:
        return 0.0
    return cumulative_kt(ds, r) / (ds.total_weight * pairs)
