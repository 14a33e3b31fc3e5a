"""Base, iterative and pair-removal pipelines.

All three share one loop: build the QUBO for the current penalties and
removed pairs, sample it, turn the best record into bits, infer removed
pairs, reconstruct a ranking and decide whether to stop.
"""
from __future__ import annotations

import logging
from dataclasses import replace
from typing import List, Optional, Set, Tuple

from ..core.cycles import Cycle, detect_cycles, initial_cycles, intersect_runs, omega, prune_for_embedding
from ..core.pairwise import UNDECIDED, Pair, UpperTriBits, bias_of, build_comparison, reconstruct
from ..core.qubo import PenaltyLedger, Qubo, build_pair_removal_qubo, select_penalty
from ..core.ranking import Dataset, cumulative_kt, normalized_kt
from ..errors import InvalidArgumentError, PairRemovalError
from ..samplers.base import Sampler, SampleSet
from ..utils.seeds import derive_seed
from .inference import infer_removed
from .options import IterationRecord, IterOptions, Solution
from .selection import STRATEGIES, remove_pairs_prhb, remove_pairs_promega

logger = logging.getLogger(__name__)

LOOP_MODES = ("minmax", "iterative")
_TIE_KEY = 1
_PROMEGA_KEY = 2


def resolve_parity(ds: Dataset, parity: Optional[str] = None) -> str:
    """Explicit parity, else odd/even of the total vote weight when integral, else even."""
    if parity in ("odd", "even"):
        return parity
    total = ds.total_weight
    if float(total).is_integer():
        return "odd" if int(total) % 2 else "even"
    return "even"


class CycleLoop:
    """Sample-check-repair loop shared by every QUBO pipeline."""

    def __init__(self, ds: Dataset, sampler: Sampler, opts: Optional[IterOptions] = None,
                 mode: str = "iterative"):
        if mode not in LOOP_MODES:
            raise InvalidArgumentError(f"Unknown loop mode: {mode}")
        self.ds = ds
        self.sampler = sampler
        self.opts = opts or IterOptions()
        self.mode = mode
        self.pm = build_comparison(ds)
        self.b = bias_of(self.pm)
        self.om = omega(self.b)
        self.parity = resolve_parity(ds, self.opts.parity)
        balanced = self.pm.is_balanced()
        self.increment = 2.0 if balanced else 1.0
        if self.opts.initial_penalty is None:
            self.bias_scaled = not balanced
        else:
            self.bias_scaled = self.opts.initial_penalty == "bias-scaled"
        self.majority_cycles = initial_cycles(self.om, self.parity)
        self.removed: Set[Pair] = set()
        self.uniform_penalty = select_penalty(self.b, ds.total_weight, self.parity, self.opts.epsilon)
        self.ledger = self._initial_ledger()

    # penalties

    def initial_penalty(self, cycle: Cycle) -> float:
        if self.bias_scaled:
            return min(abs(self.b[p]) for p in cycle.pairs()) + self.opts.epsilon
        return (1.0 if self.parity == "odd" else 0.0) + self.opts.epsilon

    def _initial_ledger(self) -> PenaltyLedger:
        if self.mode == "minmax":
            return PenaltyLedger.uniform(self.ds.n, self.uniform_penalty, self.removed)
        cycles = self.majority_cycles
        if self.opts.prune_k is not None:
            cycles = prune_for_embedding(cycles, self.opts.prune_k)
        return PenaltyLedger({c: self.initial_penalty(c) for c in cycles if not c.touches(self.removed)})

    def update_ledger(self, cycles: Set[Cycle]) -> Tuple[int, int]:
        """New cycles enter at their initial penalty, known ones are raised."""
        new = bumped = 0
        for cycle in sorted(cycles):
            if cycle in self.ledger:
                self.ledger.bump(cycle, self.increment)
                bumped += 1
            else:
                self.ledger.set(cycle, self.initial_penalty(cycle))
                new += 1
        if new or bumped:
            logger.debug("Ledger update: %d new, %d raised, %d total", new, bumped, len(self.ledger))
        return new, bumped

    def remove(self, pairs: Set[Pair]) -> None:
        self.removed = set(pairs)
        self.ledger = self._initial_ledger()

    def reinstate(self, pairs: Set[Pair]) -> None:
        self.removed -= set(pairs)
        logger.debug("Reinstated pairs %s", sorted(pairs))
        if self.mode == "minmax":
            self.ledger = PenaltyLedger.uniform(self.ds.n, self.uniform_penalty, self.removed)

    # decoding

    def expand(self, qubo: Qubo, config) -> UpperTriBits:
        values = {label: int(v) for label, v in zip(qubo.labels, config)}
        return UpperTriBits.from_pairs(self.ds.n, values, default=UNDECIDED)

    def contradicted(self, bits: UpperTriBits) -> Set[Pair]:
        """Removed pairs whose inferred order goes against a strict majority."""
        wrong = set()
        for pair in self.removed:
            bias = self.b[pair]
            if bias != 0 and bits[pair] != (1 if bias < 0 else 0):
                wrong.add(pair)
        return wrong

    def _run_cycles(self, qubo: Qubo, runs: List[SampleSet]) -> Set[Cycle]:
        """Cycles seen in the best configuration of every run."""
        sets = []
        for samples in runs:
            bits = self.expand(qubo, samples.best().config)
            if self.removed:
                inferred = infer_removed(bits, self.removed)
                if inferred.stalled:
                    continue
                bits = inferred.bits
            sets.append(detect_cycles(bits))
        return intersect_runs(sets) if sets else set()

    # main loop

    def run(self, method: Optional[str] = None) -> Solution:
        opts = self.opts
        method = method or ("base" if self.mode == "minmax" else "iterative")
        best: Optional[Solution] = None
        trace: List[IterationRecord] = []
        iteration = updates = restarts = 0
        first_removed = tuple(sorted(self.removed))

        while iteration < opts.max_iterations:
            qubo = build_pair_removal_qubo(self.b, self.ledger, self.removed)
            runs = [
                self.sampler.sample(qubo, seed=derive_seed(opts.seed, iteration, run))
                for run in range(opts.double_check)
            ]
            iteration += 1
            samples = min(runs, key=lambda s: s.best().sort_key())
            record = samples.best()
            bits = self.expand(qubo, record.config)

            contradicted: Set[Pair] = set()
            if self.removed:
                inferred = infer_removed(bits, self.removed)
                if inferred.stalled:
                    restarts += 1
                    if restarts > opts.max_restarts:
                        fallback = best if best is not None and best.converged else None
                        raise PairRemovalError(
                            f"Inference stalled on {list(inferred.unresolved)} after {opts.max_restarts} restarts",
                            best=fallback,
                        )
                    logger.info("Inference stalled on %d pairs, restarting", len(inferred.unresolved))
                    self.reinstate(set(inferred.unresolved))
                    continue
                bits = inferred.bits
                contradicted = self.contradicted(bits)

            cycles = detect_cycles(bits)
            ranking = reconstruct(bits, tie_seed=derive_seed(opts.seed, iteration, _TIE_KEY))
            candidate = Solution(
                ranking=ranking,
                bits=bits,
                cumulative_kt=cumulative_kt(self.ds, ranking),
                normalized_kt=normalized_kt(self.ds, ranking),
                energy=record.energy,
                num_occ=record.num_occ,
                iterations=iteration,
                ledger=self.ledger.snapshot() if self.mode == "iterative" else {},
                converged=not cycles,
                seed=opts.seed,
                method=method,
                samples=samples,
            )
            # cycle-free first, then lower kt, later rounds win ties
            if best is None or (not candidate.converged, candidate.cumulative_kt) <= (
                not best.converged, best.cumulative_kt
            ):
                best = candidate

            touching = {p for c in cycles for p in c.pairs()} & self.removed
            new = bumped = 0
            if not cycles and not contradicted:
                trace.append(self._record(iteration, 0, 0, record.energy, candidate.cumulative_kt))
                break
            if touching or contradicted:
                self.reinstate(touching | contradicted)
                trace.append(self._record(iteration, 0, 0, record.energy, candidate.cumulative_kt))
                continue
            if self.mode == "minmax":
                trace.append(self._record(iteration, 0, 0, record.energy, candidate.cumulative_kt))
                break
            if opts.max_cycle_updates is not None and updates >= opts.max_cycle_updates:
                trace.append(self._record(iteration, 0, 0, record.energy, candidate.cumulative_kt))
                break
            observed = self._run_cycles(qubo, runs) if opts.double_check > 1 else cycles
            new, bumped = self.update_ledger(observed)
            if new or bumped:
                updates += 1
            trace.append(self._record(iteration, new, bumped, record.energy, candidate.cumulative_kt))
            logger.info(
                "Iteration %d: %d cycles in output, kt %g, ledger %d",
                iteration, len(cycles), candidate.cumulative_kt, len(self.ledger),
            )
        else:
            logger.warning("Stopped after %d iterations without a cycle-free output", iteration)

        if best is None:
            raise PairRemovalError("No attempt produced a decodable configuration")
        if not best.converged:
            logger.warning("Returning best-so-far solution with cycles (kt %g)", best.cumulative_kt)
        return replace(
            best,
            iterations=iteration,
            trace=tuple(trace),
            removed_pairs=first_removed,
            restarts=restarts,
        )

    def _record(self, iteration: int, new: int, bumped: int, energy: float, kt: float) -> IterationRecord:
        return IterationRecord(iteration, len(self.ledger) if self.mode == "iterative" else 0,
                               new, bumped, energy, kt)


def solve_base(ds: Dataset, sampler: Sampler, epsilon: float = 0.5, seed: Optional[int] = 0,
               parity: Optional[str] = None) -> Solution:
    """Uniform min-max penalty on every triple, one sampler call."""
    return CycleLoop(ds, sampler, IterOptions(epsilon=epsilon, seed=seed, parity=parity), mode="minmax").run()


def solve_iterative(ds: Dataset, sampler: Sampler, opts: Optional[IterOptions] = None) -> Solution:
    """Penalize only cycles seen in the majority matrix or in sampler outputs."""
    return CycleLoop(ds, sampler, opts, mode="iterative").run()


def select_pairs(loop: CycleLoop, strategy: str, count: int) -> Set[Pair]:
    if strategy == "prhb":
        return remove_pairs_prhb(loop.b, loop.majority_cycles, count)
    if strategy == "promega":
        return remove_pairs_promega(
            loop.om, loop.majority_cycles, count, loop.opts.min_gap,
            seed=derive_seed(loop.opts.seed, _PROMEGA_KEY),
        )
    raise InvalidArgumentError(f"Unknown pair-removal strategy {strategy!r}; expected one of {STRATEGIES}")


def solve_pair_removal(ds: Dataset, sampler: Sampler, strategy: str, count: int,
                       opts: Optional[IterOptions] = None, penalty_mode: str = "iterative") -> Solution:
    """Solve with some pairs taken out of the QUBO and inferred afterwards.

    Pairs in majority cycles are never removed. An empty selection runs the
    plain pipeline for ``penalty_mode``.
    """
    loop = CycleLoop(ds, sampler, opts, mode=penalty_mode)
    removed = select_pairs(loop, strategy, count)
    if not removed:
        return loop.run()
    logger.info("Removing %d pairs with %s: %s", len(removed), strategy, sorted(removed))
    loop.remove(removed)
    return loop.run(method="pair-removal")
