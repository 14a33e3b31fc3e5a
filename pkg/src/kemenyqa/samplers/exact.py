"""Exhaustive ground-state enumeration."""
from __future__ import annotations

import logging
from typing import List, Optional

import numpy as np

from ..core.qubo import Qubo
from ..errors import ProblemTooLargeError
from ..utils.env import env_config
from .base import ENERGY_RTOL, SampleRecord, SampleSet

logger = logging.getLogger(__name__)

CHUNK_ROWS = 256


def _all_configs(k: int) -> np.ndarray:
    """Every k-bit configuration, first variable most significant."""
    codes = np.arange(2 ** k, dtype=np.int64)
    shifts = np.arange(k - 1, -1, -1, dtype=np.int64)
    return ((codes[:, None] >> shifts[None, :]) & 1).astype(np.float64)


def _tolerance(energy: float) -> float:
    return ENERGY_RTOL * max(1.0, abs(energy))


def exact_solve(qubo: Qubo, cap: Optional[int] = None) -> SampleSet:
    """Enumerate all 2^num_vars configurations and return every ground state.

    The variables are split in two halves so each chunk of energies is one
    matrix product: E = E_hi + E_lo + X_hi J_cross X_lo^T.
    """
    cap = cap if cap is not None else env_config.get_exact_cap()
    nv = qubo.num_vars
    if nv > cap:
        raise ProblemTooLargeError("QUBO", nv, cap)
    if nv == 0:
        return SampleSet((SampleRecord((), qubo.offset, 1),), "exact", 1)

    h, J = qubo.to_dense()
    hi = nv // 2
    x_hi = _all_configs(hi)
    x_lo = _all_configs(nv - hi)
    e_hi = x_hi @ h[:hi] + np.einsum("ri,ij,rj->r", x_hi, J[:hi, :hi], x_hi)
    e_lo = x_lo @ h[hi:] + np.einsum("ri,ij,rj->r", x_lo, J[hi:, hi:], x_lo)
    cross = J[:hi, hi:]

    best = np.inf
    hits: List[np.ndarray] = []
    for start in range(0, len(x_hi), CHUNK_ROWS):
        rows = slice(start, start + CHUNK_ROWS)
        block = e_hi[rows, None] + e_lo[None, :] + (x_hi[rows] @ cross) @ x_lo.T
        low = float(block.min())
        if low < best - _tolerance(best if np.isfinite(best) else low):
            best = low
            hits = []
        if low <= best + _tolerance(best):
            r, c = np.nonzero(block <= best + _tolerance(best))
            hits.append(np.hstack([x_hi[start + r], x_lo[c]]))

    ground = np.vstack(hits).astype(np.int8)
    # drop stragglers collected before the final minimum was known
    energies = qubo.energies(ground)
    final = float(energies.min())
    ground = ground[energies <= final + _tolerance(final)]
    logger.debug("Exact solve over %d variables: %d ground states at %g", nv, len(ground), final)
    return SampleSet.from_configs(qubo, ground, "exact", counts=[1] * len(ground))


class ExactSampler:
    """Sampler backend that enumerates the whole configuration space."""

    name = "exact"

    def __init__(self, cap: Optional[int] = None):
        self.cap = cap if cap is not None else env_config.get_exact_cap()

    def fits(self, qubo: Qubo) -> bool:
        return qubo.num_vars <= self.cap

    def sample(self, qubo: Qubo, seed: Optional[int] = None) -> SampleSet:
        return exact_solve(qubo, self.cap)
