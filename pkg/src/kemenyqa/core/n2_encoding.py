"""Position-slot (n squared variables) QUBO encoding, kept as a baseline."""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import DecodeError, InvalidArgumentError
from .pairwise import PairMatrix
from .qubo import Qubo
from .ranking import Ranking

logger = logging.getLogger(__name__)


@dataclass
class N2Encoding:
    """A QUBO where variable ``candidate * n + position`` says candidate sits at position."""

    qubo: Qubo
    n: int
    penalty: float

    def variable(self, candidate: int, position: int) -> int:
        return candidate * self.n + position

    def encode(self, r: Ranking) -> tuple:
        config = [0] * (self.n * self.n)
        for position, candidate in enumerate(r.order):
            config[self.variable(candidate, position)] = 1
        return tuple(config)

    def decode(self, config: Sequence[int]) -> Ranking:
        """Ranking of a one-hot configuration; DecodeError if any row or column is not one-hot."""
        grid = np.asarray(config, dtype=np.int64).reshape(self.n, self.n)
        rows = grid.sum(axis=1)
        cols = grid.sum(axis=0)
        if np.any(rows != 1) or np.any(cols != 1):
            raise DecodeError(
                f"Configuration violates one-hot constraints (rows {rows.tolist()}, columns {cols.tolist()})"
            )
        return Ranking(tuple(int(c) for c in np.argmax(grid, axis=0)))


def build_n2_qubo(pm: PairMatrix, total_votes: int) -> N2Encoding:
    """Encode Kemeny aggregation with one binary per (candidate, position).

    Each row and column of the assignment grid carries the penalty
    P (1 - sum x)^2 with P = n^2 |votes|; placing i before j costs the
    number of votes preferring j to i. The offset makes feasible energies
    equal cumulative KT.
    """
    n = pm.n
    if total_votes < 1:
        raise InvalidArgumentError(f"total_votes must be positive, got {total_votes}")
    sums = (pm.w + pm.w.T)[np.triu_indices(n, 1)]
    if np.any(sums != total_votes) or np.any(pm.w != np.round(pm.w)):
        raise InvalidArgumentError("The n^2 encoding needs tallies from complete unweighted votes")

    penalty = float(n * n * total_votes)
    labels = [(c, pos) for c in range(n) for pos in range(n)]
    qubo = Qubo(n * n, labels=labels, offset=2 * n * penalty)

    def var(c: int, pos: int) -> int:
        return c * n + pos

    for c in range(n):
        for pos in range(n):
            # one row and one column constraint per slot
            qubo.add_linear(var(c, pos), -2 * penalty)
    for c in range(n):
        for p1, p2 in itertools.combinations(range(n), 2):
            qubo.add_quadratic(var(c, p1), var(c, p2), 2 * penalty)
    for pos in range(n):
        for c1, c2 in itertools.combinations(range(n), 2):
            qubo.add_quadratic(var(c1, pos), var(c2, pos), 2 * penalty)

    for i, j in itertools.permutations(range(n), 2):
        cost = pm.w[j, i]
        if cost == 0:
            continue
        for k, l in itertools.combinations(range(n), 2):
            qubo.add_quadratic(var(i, k), var(j, l), cost)

    logger.debug("Built n^2 QUBO: %d variables, penalty %g", qubo.num_vars, penalty)
    return N2Encoding(qubo, n, penalty)
