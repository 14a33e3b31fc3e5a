"""Sampler contract and sample sets."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Protocol, Sequence, Tuple

import numpy as np

from ..core.qubo import Qubo

ENERGY_RTOL = 1e-9


@dataclass(frozen=True)
class SampleRecord:
    """A distinct configuration with its energy and occurrence count."""

    config: Tuple[int, ...]
    energy: float
    num_occ: int

    def sort_key(self):
        return (self.energy, -self.num_occ, self.config)


@dataclass(frozen=True)
class SampleSet:
    """Sampler output, records ordered from best to worst."""

    records: Tuple[SampleRecord, ...]
    backend: str
    reads: int
    seed: Optional[int] = None
    info: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "records", tuple(sorted(self.records, key=SampleRecord.sort_key)))

    @classmethod
    def from_configs(
        cls,
        qubo: Qubo,
        configs: np.ndarray,
        backend: str,
        seed: Optional[int] = None,
        counts: Optional[Sequence[int]] = None,
        info: Optional[Dict[str, Any]] = None,
    ) -> "SampleSet":
        """Aggregate identical configurations and re-evaluate their energies on the QUBO."""
        configs = np.asarray(configs, dtype=np.int8).reshape(-1, qubo.num_vars)
        if counts is None:
            unique, counts = np.unique(configs, axis=0, return_counts=True)
        else:
            unique = configs
        energies = qubo.energies(unique) if len(unique) else np.zeros(0)
        records = tuple(
            SampleRecord(tuple(int(v) for v in row), float(e), int(c))
            for row, e, c in zip(unique, energies, counts)
        )
        reads = int(np.sum(counts))
        return cls(records, backend, reads, seed, dict(info or {}))

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    @property
    def lowest_energy(self) -> float:
        return self.records[0].energy

    def best(self) -> SampleRecord:
        """Lowest energy; ties go to the highest num_occ, then the smallest bit tuple."""
        return self.records[0]

    def _is_ground(self, energy: float) -> bool:
        low = self.lowest_energy
        return abs(energy - low) <= ENERGY_RTOL * max(1.0, abs(low))

    def ground_states(self) -> List[SampleRecord]:
        return [r for r in self.records if self._is_ground(r.energy)]

    def ground_occurrences(self) -> int:
        """Reads that ended at the lowest sampled energy."""
        return sum(r.num_occ for r in self.ground_states())

    def occurrences_of(self, configs: Iterable[Sequence[int]]) -> int:
        wanted = {tuple(int(v) for v in c) for c in configs}
        return sum(r.num_occ for r in self.records if r.config in wanted)

    def to_dict(self, limit: Optional[int] = None) -> Dict[str, Any]:
        records = self.records if limit is None else self.records[:limit]
        return {
            "backend": self.backend,
            "reads": self.reads,
            "seed": self.seed,
            "records": [
                {"config": list(r.config), "energy": r.energy, "num_occ": r.num_occ}
                for r in records
            ],
        }

    def to_json(self, limit: Optional[int] = None) -> str:
        return json.dumps(self.to_dict(limit), indent=2)


class Sampler(Protocol):
    """Anything that can minimize a QUBO."""

    name: str

    def sample(self, qubo: Qubo, seed: Optional[int] = None) -> SampleSet:
        ...
