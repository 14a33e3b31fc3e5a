"""Comparison harnesses: iterative method against KwikSort, and penalty sweeps."""
from __future__ import annotations

import logging
import statistics
import time
from dataclasses import dataclass, field, replace
from typing import Any, Dict, Iterable, List, Optional, Sequence

import numpy as np

from ..samplers.annealing import SaParams, SimulatedAnnealingSampler
from ..samplers.base import Sampler, SampleSet
from ..solvers.options import IterOptions
from ..solvers.pipeline import solve_iterative
from ..utils.parallel import ParallelProcessor
from ..utils.seeds import derive_seed
from .baselines import brute_force, kwiksort, ranking_costs
from .pairwise import bias_of, build_comparison, num_pairs, represent
from .qubo import build_base_qubo
from .ranking import Dataset, Ranking

logger = logging.getLogger(__name__)

THRESHOLDS = ("avg_kt", "avg_run_min", "min_run_min")


def optimal_occurrences(samples: SampleSet, optima: Iterable[Ranking], n: int) -> int:
    """Reads that ended in a configuration representing one of ``optima``.

    Only meaningful for QUBOs over all n(n-1)/2 pair variables.
    """
    configs = [represent(r).bits for r in optima]
    expected = num_pairs(n)
    if samples.records and len(samples.records[0].config) != expected:
        logger.warning("Sample configurations do not cover all %d pairs", expected)
        return 0
    return samples.occurrences_of(configs)


@dataclass(frozen=True)
class MethodRun:
    """One row of a comparison table."""

    method: str
    seed: int
    best_kt: float
    steps: int
    seconds: float
    converged: Optional[bool] = None

    def to_row(self) -> Dict[str, Any]:
        return {
            "method": self.method,
            "seed": self.seed,
            "best_kt": self.best_kt,
            "steps": self.steps,
            "seconds": round(self.seconds, 6),
            "converged": "" if self.converged is None else self.converged,
        }


@dataclass(frozen=True)
class ThresholdStat:
    """How long KwikSort needs, on average, to beat one iterative-method threshold."""

    name: str
    threshold: float
    mean_trials: Optional[float]
    mean_seconds: Optional[float]

    def display(self) -> str:
        if self.mean_trials is None:
            return "-"
        return f"{self.mean_trials:.1f} trials / {self.mean_seconds:.4f}s"


@dataclass
class Comparison:
    """Iterative runs, KwikSort trials and the derived thresholds."""

    iterative: List[MethodRun]
    kwiksort_kts: List[float]
    kwiksort_seconds: float
    iteration_kts: List[float]
    thresholds: List[ThresholdStat] = field(default_factory=list)

    @property
    def rows(self) -> List[MethodRun]:
        trials = len(self.kwiksort_kts)
        best = min(self.kwiksort_kts) if self.kwiksort_kts else float("nan")
        ks = MethodRun("kwiksort", -1, best, trials, self.kwiksort_seconds)
        return [*self.iterative, ks]

    def summary(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "avg_kt_iterative": statistics.fmean(self.iteration_kts) if self.iteration_kts else None,
            "min_kt_iterative": min((r.best_kt for r in self.iterative), default=None),
            "min_kt_kwiksort": min(self.kwiksort_kts, default=None),
            "mean_kt_kwiksort": statistics.fmean(self.kwiksort_kts) if self.kwiksort_kts else None,
        }
        for stat in self.thresholds:
            out[f"{stat.name}_threshold"] = stat.threshold
            out[f"{stat.name}_trials"] = stat.mean_trials
            out[f"{stat.name}_seconds"] = stat.mean_seconds
        return out


def trials_to_beat(kts: Sequence[float], threshold: float, seconds_per_trial: float,
                   name: str = "threshold") -> ThresholdStat:
    """Mean trials until KwikSort output is strictly below ``threshold``.

    Estimated as trials / successes; None when no trial beats it.
    """
    hits = int(np.sum(np.asarray(kts) < threshold))
    if hits == 0:
        return ThresholdStat(name, threshold, None, None)
    mean_trials = len(kts) / hits
    return ThresholdStat(name, threshold, mean_trials, mean_trials * seconds_per_trial)


def compare_methods(ds: Dataset, sampler: Sampler, runs: int = 5, trials: int = 10000,
                    opts: Optional[IterOptions] = None, seed: int = 0,
                    processor: Optional[ParallelProcessor] = None) -> Comparison:
    """Run the iterative method ``runs`` times and KwikSort ``trials`` times.

    The per-iteration KT of every run feeds the average threshold, the best
    KT of each run feeds the other two.
    """
    base = opts or IterOptions(max_cycle_updates=4)
    iterative: List[MethodRun] = []
    iteration_kts: List[float] = []
    for run in range(runs):
        run_seed = derive_seed(seed, run)
        run_opts = replace(base, seed=run_seed)
        start = time.perf_counter()
        solution = solve_iterative(ds, sampler, run_opts)
        elapsed = time.perf_counter() - start
        iterative.append(MethodRun("iterative", run_seed, solution.cumulative_kt, solution.iterations,
                                   elapsed, solution.converged))
        iteration_kts.extend(record.best_kt for record in solution.trace)
        logger.info("Iterative run %d: kt %g in %d iterations", run, solution.cumulative_kt, solution.iterations)

    pm = build_comparison(ds)
    processor = processor or ParallelProcessor()
    start = time.perf_counter()
    orders = processor.map_ordered(lambda t: kwiksort(pm, derive_seed(seed, 1, t)).order, range(trials))
    ks_seconds = time.perf_counter() - start
    kts = [float(v) for v in ranking_costs(pm, np.array(orders))] if trials else []
    per_trial = ks_seconds / trials if trials else 0.0

    run_mins = [r.best_kt for r in iterative]
    thresholds = []
    if iteration_kts:
        values = {
            "avg_kt": statistics.fmean(iteration_kts),
            "avg_run_min": statistics.fmean(run_mins),
            "min_run_min": min(run_mins),
        }
        thresholds = [trials_to_beat(kts, values[name], per_trial, name) for name in THRESHOLDS]
    return Comparison(iterative, kts, ks_seconds, iteration_kts, thresholds)


def penalty_sweep(ds: Dataset, penalties: Sequence[float], seeds: Sequence[int],
                  params: Optional[SaParams] = None, optima: Optional[Iterable[Ranking]] = None,
                  processor: Optional[ParallelProcessor] = None) -> Dict[float, List[int]]:
    """Optimal-state occurrences of annealing the base QUBO at each penalty.

    ``optima`` defaults to the brute-force optima.
    """
    optima = list(optima) if optima is not None else sorted(brute_force(ds).optima, key=lambda r: r.order)
    b = bias_of(build_comparison(ds))
    sampler = SimulatedAnnealingSampler(params or SaParams(), processor)
    results: Dict[float, List[int]] = {}
    for penalty in penalties:
        qubo = build_base_qubo(b, penalty)
        counts = [optimal_occurrences(sampler.sample(qubo, seed=s), optima, ds.n) for s in seeds]
        results[penalty] = counts
        logger.info("Penalty %g: median optimal occurrences %g", penalty, statistics.median(counts))
    return results
