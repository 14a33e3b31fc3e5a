"""Pairwise tallies, biases and the upper-triangular bit representation."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

import numpy as np

from ..errors import InvalidArgumentError, InvalidStateError
from .ranking import Dataset, ListKind, Ranking, precedence_matrix, vote_preferences

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]

UNDECIDED = -1


def pair_index(i: int, j: int, n: int) -> int:
    """Lexicographic index of pair (i, j), i < j, among the n(n-1)/2 pairs."""
    if not 0 <= i < j < n:
        raise InvalidArgumentError(f"Invalid pair ({i}, {j}) for n={n}")
    return i * n - i * (i + 1) // 2 + (j - i - 1)


def num_pairs(n: int) -> int:
    return n * (n - 1) // 2


def all_pairs(n: int) -> Iterator[Pair]:
    """Yield every pair (i, j), i < j, in index order."""
    for i in range(n):
        for j in range(i + 1, n):
            yield (i, j)


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=float)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class PairMatrix:
    """Tallies w[i, j] of (weighted) votes preferring candidate i to j."""

    n: int
    w: np.ndarray

    def __post_init__(self):
        w = _frozen(self.w)
        if w.shape != (self.n, self.n):
            raise InvalidArgumentError(f"Pair matrix must be {self.n}x{self.n}, got {w.shape}")
        if np.any(np.diag(w) != 0) or np.any(w < 0):
            raise InvalidArgumentError("Pair matrix needs a zero diagonal and nonnegative tallies")
        object.__setattr__(self, "w", w)

    def __getitem__(self, pair: Pair) -> float:
        return float(self.w[pair])

    def upper_total(self) -> float:
        """Sum of w[i, j] over i < j."""
        return float(np.sum(np.triu(self.w, 1)))

    def is_balanced(self) -> bool:
        """True when tallies are integral and w[i, j] + w[j, i] is the same for every pair."""
        if self.n < 2:
            return True
        if not np.all(self.w == np.round(self.w)):
            return False
        sums = (self.w + self.w.T)[np.triu_indices(self.n, 1)]
        return bool(np.all(sums == sums[0]))

    def majority_prefers(self, a: int, b: int) -> Optional[bool]:
        """True if a beats b, False if b beats a, None on a tie."""
        if self.w[a, b] == self.w[b, a]:
            return None
        return bool(self.w[a, b] > self.w[b, a])


@dataclass(frozen=True, eq=False)
class BiasMatrix:
    """Strictly upper-triangular biases b[i, j] = w[j, i] - w[i, j]."""

    n: int
    b: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "b", _frozen(np.triu(self.b, 1)))

    def __getitem__(self, pair: Pair) -> float:
        return float(self.b[pair])

    def values(self) -> np.ndarray:
        """Biases as a vector in pair-index order."""
        return self.b[np.triu_indices(self.n, 1)]

    def max_abs(self) -> float:
        values = self.values()
        return float(np.max(np.abs(values))) if values.size else 0.0


@dataclass(frozen=True)
class UpperTriBits:
    """One bit per pair (i, j), i < j: 1 means i precedes j.

    Slots may hold UNDECIDED while removed pairs are being inferred.
    """

    n: int
    bits: Tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(v) for v in self.bits)
        object.__setattr__(self, "bits", bits)
        if len(bits) != num_pairs(self.n):
            raise InvalidArgumentError(f"Expected {num_pairs(self.n)} bits for n={self.n}, got {len(bits)}")
        if any(v not in (0, 1, UNDECIDED) for v in bits):
            raise InvalidArgumentError(f"Bits must be 0, 1 or undecided: {bits}")

    @classmethod
    def from_pairs(cls, n: int, values: Mapping[Pair, int], default: int = UNDECIDED) -> "UpperTriBits":
        return cls(n, tuple(int(values.get(p, default)) for p in all_pairs(n)))

    def __getitem__(self, pair: Pair) -> int:
        i, j = pair
        return self.bits[pair_index(i, j, self.n)]

    @property
    def is_complete(self) -> bool:
        return UNDECIDED not in self.bits

    def undecided_pairs(self) -> List[Pair]:
        return [p for p, v in zip(all_pairs(self.n), self.bits) if v == UNDECIDED]

    def with_values(self, values: Mapping[Pair, int]) -> "UpperTriBits":
        bits = list(self.bits)
        for (i, j), v in values.items():
            bits[pair_index(i, j, self.n)] = int(v)
        return UpperTriBits(self.n, tuple(bits))

    def as_dict(self) -> Dict[Pair, int]:
        return dict(zip(all_pairs(self.n), self.bits))

    def upper_matrix(self) -> np.ndarray:
        """n x n int matrix holding the bits above the diagonal, zeros elsewhere."""
        matrix = np.zeros((self.n, self.n), dtype=np.int64)
        matrix[np.triu_indices(self.n, 1)] = self.bits
        return matrix

    def preference_matrix(self) -> np.ndarray:
        """Full 0/1 matrix with [a, b] = 1 when a is placed before b."""
        if not self.is_complete:
            raise InvalidStateError("Bit matrix still has undecided slots")
        upper = self.upper_matrix()
        lower = np.tril(1 - upper.T, -1)
        return upper + lower

    def __str__(self) -> str:
        return "".join("?" if v == UNDECIDED else str(v) for v in self.bits)


def build_comparison(ds: Dataset) -> PairMatrix:
    """Tally how often each candidate is preferred to each other one."""
    w = np.zeros((ds.n, ds.n))
    for vote in ds.votes:
        w += vote.weight * vote_preferences(vote, ds.n, ds.pair_weight)
    pm = PairMatrix(ds.n, w)
    if ds.is_unweighted and ds.kind is ListKind.COMPLETE and ds.n > 1:
        # complete unweighted votes split every pair exactly
        assert np.all((w + w.T)[np.triu_indices(ds.n, 1)] == len(ds.votes))
    return pm


def bias_of(pm: PairMatrix) -> BiasMatrix:
    """Linear QUBO coefficients b[i, j] = w[j, i] - w[i, j] for i < j."""
    return BiasMatrix(pm.n, pm.w.T - pm.w)


def represent(r: Ranking) -> UpperTriBits:
    """Bits of a complete ranking: x[i, j] = 1 iff i precedes j."""
    n = len(r)
    if not r.is_complete_over(n):
        raise InvalidArgumentError(f"Only complete rankings have a bit representation: {list(r.order)}")
    before = precedence_matrix(r, n)
    return UpperTriBits(n, tuple(int(v) for v in before[np.triu_indices(n, 1)]))


def scores(x: UpperTriBits) -> np.ndarray:
    """Number of candidates each candidate is placed before."""
    return x.preference_matrix().sum(axis=1)


def reconstruct(x: UpperTriBits, tie_seed: Optional[int] = 0) -> Ranking:
    """Rank candidates by decreasing score, shuffling equal scores with tie_seed."""
    if not x.is_complete:
        raise InvalidStateError(f"Cannot reconstruct a ranking from undecided bits {x}")
    values = scores(x)
    shuffled = np.random.default_rng(tie_seed).permutation(x.n)
    order = shuffled[np.argsort(-values[shuffled], kind="stable")]
    return Ranking(tuple(int(c) for c in order))


def accuracy(x: UpperTriBits, optima: Iterable[Ranking]) -> int:
    """1 when x represents one of the optimal rankings, else 0."""
    optima = list(optima)
    if not optima:
        raise InvalidArgumentError("accuracy needs at least one optimal ranking")
    if not x.is_complete:
        raise InvalidStateError("Cannot score undecided bits")
    return int(any(represent(opt).bits == x.bits for opt in optima))
