"""Multi-read simulated annealing."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from ..core.qubo import Qubo
from ..errors import InvalidArgumentError
from ..utils.parallel import ParallelProcessor
from ..utils.seeds import make_rng
from .base import SampleRecord, SampleSet

logger = logging.getLogger(__name__)

DEFAULT_BETA_RANGE = (0.1, 10.0)


@dataclass(frozen=True)
class SaParams:
    """Annealing budget and schedule.

    ``beta_range`` of None scales the geometric schedule to the QUBO:
    0.1 / max|coeff| up to 10 / min nonzero |coeff|.
    """

    reads: int = 2500
    sweeps: int = 200
    beta_range: Optional[Tuple[float, float]] = None
    seed: Optional[int] = None
    batch_size: int = 500

    def __post_init__(self):
        if self.reads < 1 or self.sweeps < 1 or self.batch_size < 1:
            raise InvalidArgumentError(
                f"reads, sweeps and batch_size must be positive: {self.reads}, {self.sweeps}, {self.batch_size}"
            )
        if self.beta_range is not None:
            start, end = self.beta_range
            if not 0 < start < end:
                raise InvalidArgumentError(f"beta range must satisfy 0 < start < end, got {self.beta_range}")

    def resolve_beta_range(self, qubo: Qubo) -> Tuple[float, float]:
        if self.beta_range is not None:
            return self.beta_range
        largest, smallest = qubo.coefficient_range()
        if largest == 0:
            return DEFAULT_BETA_RANGE
        return (0.1 / largest, 10.0 / smallest)

    def schedule(self, qubo: Qubo) -> np.ndarray:
        start, end = self.resolve_beta_range(qubo)
        return np.geomspace(start, end, self.sweeps)

    def batches(self) -> List[int]:
        full, rest = divmod(self.reads, self.batch_size)
        return [self.batch_size] * full + ([rest] if rest else [])


def _anneal_batch(h: np.ndarray, J: np.ndarray, betas: np.ndarray, size: int,
                  rng: np.random.Generator) -> np.ndarray:
    """Single-spin-flip Metropolis for a batch of independent reads."""
    x = rng.integers(0, 2, size=(size, h.size)).astype(float)
    field = h + x @ J
    for beta in betas:
        for v in range(h.size):
            direction = 1.0 - 2.0 * x[:, v]
            delta = direction * field[:, v]
            accept = rng.random(size) < np.exp(-beta * np.maximum(delta, 0.0))
            step = direction * accept
            x[:, v] += step
            field += step[:, None] * J[v][None, :]
    return x.astype(np.int8)


def sa_solve(qubo: Qubo, params: Optional[SaParams] = None,
             processor: Optional[ParallelProcessor] = None) -> SampleSet:
    """Anneal ``params.reads`` independent reads and aggregate identical outcomes.

    Reads are split into fixed-size batches; batch b is seeded from (seed, b),
    so the result does not depend on how many workers run the batches.
    """
    params = params or SaParams()
    if qubo.num_vars == 0:
        return SampleSet((SampleRecord((), qubo.offset, params.reads),), "sa", params.reads, params.seed)

    h, upper = qubo.to_dense()
    J = upper + upper.T
    betas = params.schedule(qubo)
    jobs = list(enumerate(params.batches()))
    logger.debug(
        "Annealing %d reads in %d batches, %d sweeps, beta %.3g..%.3g",
        params.reads, len(jobs), params.sweeps, betas[0], betas[-1],
    )
    processor = processor or ParallelProcessor()
    chunks = processor.map_ordered(
        lambda job: _anneal_batch(h, J, betas, job[1], make_rng(params.seed, job[0])), jobs
    )
    info = {"sweeps": params.sweeps, "beta_range": [float(betas[0]), float(betas[-1])]}
    return SampleSet.from_configs(qubo, np.vstack(chunks), "sa", seed=params.seed, info=info)


class SimulatedAnnealingSampler:
    """Sampler backend wrapping sa_solve; the per-call seed overrides params.seed."""

    name = "sa"

    def __init__(self, params: Optional[SaParams] = None, processor: Optional[ParallelProcessor] = None):
        self.params = params or SaParams()
        self.processor = processor

    def sample(self, qubo: Qubo, seed: Optional[int] = None) -> SampleSet:
        params = self.params
        if seed is not None:
            params = SaParams(params.reads, params.sweeps, params.beta_range, seed, params.batch_size)
        return sa_solve(qubo, params, self.processor)
