"""QUBO construction for Kemeny aggregation over pair variables."""
from __future__ import annotations

import logging
from pathlib import Path
from typing import Dict, Hashable, Iterable, Iterator, List, Mapping, Optional, Sequence, Set, Tuple

import numpy as np

from ..errors import InvalidArgumentError
from .cycles import PARITIES, Cycle
from .pairwise import BiasMatrix, Pair, all_pairs, pair_index

logger = logging.getLogger(__name__)

__all__ = [
    "Qubo",
    "PenaltyLedger",
    "pair_index",
    "cycle_penalty",
    "select_penalty",
    "build_base_qubo",
    "build_iterative_qubo",
    "build_pair_removal_qubo",
]


class Qubo:
    """Sparse QUBO: linear and upper-triangular quadratic coefficients plus an offset.

    Variables are 0..num_vars-1; ``labels`` names what each variable stands for
    (a candidate pair, or a (candidate, position) slot).
    """

    def __init__(
        self,
        num_vars: int,
        linear: Optional[Mapping[int, float]] = None,
        quadratic: Optional[Mapping[Tuple[int, int], float]] = None,
        offset: float = 0.0,
        labels: Optional[Sequence[Hashable]] = None,
    ):
        self.num_vars = int(num_vars)
        self.linear: Dict[int, float] = {}
        self.quadratic: Dict[Tuple[int, int], float] = {}
        self.offset = float(offset)
        self.labels: Tuple[Hashable, ...] = tuple(labels) if labels is not None else tuple(range(self.num_vars))
        if len(self.labels) != self.num_vars:
            raise InvalidArgumentError(f"Expected {self.num_vars} labels, got {len(self.labels)}")
        self._index = {label: v for v, label in enumerate(self.labels)}
        for v, coeff in (linear or {}).items():
            self.add_linear(v, coeff)
        for (u, v), coeff in (quadratic or {}).items():
            self.add_quadratic(u, v, coeff)

    def _check_var(self, v: int) -> None:
        if not 0 <= v < self.num_vars:
            raise InvalidArgumentError(f"Variable {v} out of range [0, {self.num_vars})")

    def add_linear(self, v: int, coeff: float) -> None:
        self._check_var(v)
        self.linear[v] = self.linear.get(v, 0.0) + float(coeff)

    def add_quadratic(self, u: int, v: int, coeff: float) -> None:
        self._check_var(u)
        self._check_var(v)
        if u == v:
            raise InvalidArgumentError(f"Quadratic term on a single variable {u}; use a linear term")
        key = (u, v) if u < v else (v, u)
        self.quadratic[key] = self.quadratic.get(key, 0.0) + float(coeff)

    def index_of(self, label: Hashable) -> int:
        return self._index[label]

    def energy(self, config: Sequence[int]) -> float:
        """Energy of one binary configuration."""
        if len(config) != self.num_vars:
            raise InvalidArgumentError(f"Configuration has {len(config)} values, QUBO has {self.num_vars}")
        total = self.offset
        for v, coeff in self.linear.items():
            if config[v]:
                total += coeff
        for (u, v), coeff in self.quadratic.items():
            if config[u] and config[v]:
                total += coeff
        return total

    def to_dense(self) -> Tuple[np.ndarray, np.ndarray]:
        """Linear vector h and strictly upper-triangular matrix J."""
        h = np.zeros(self.num_vars)
        for v, coeff in self.linear.items():
            h[v] = coeff
        J = np.zeros((self.num_vars, self.num_vars))
        for (u, v), coeff in self.quadratic.items():
            J[u, v] = coeff
        return h, J

    def energies(self, configs: np.ndarray) -> np.ndarray:
        """Vectorized energies for a (reads, num_vars) array of configurations."""
        x = np.atleast_2d(np.asarray(configs, dtype=float))
        h, J = self.to_dense()
        return x @ h + np.einsum("ri,ij,rj->r", x, J, x) + self.offset

    def coefficient_range(self) -> Tuple[float, float]:
        """Largest and smallest nonzero absolute coefficient (0, 0 for an empty QUBO)."""
        values = np.abs(np.fromiter(
            (c for c in (*self.linear.values(), *self.quadratic.values())), dtype=float
        ))
        values = values[values > 0]
        if values.size == 0:
            return 0.0, 0.0
        return float(values.max()), float(values.min())

    def dumps(self) -> str:
        """Serialize as ``i j coeff`` lines (i == j for linear terms)."""
        lines = [f"# vars: {self.num_vars} offset: {self.offset!r}"]
        for v in sorted(self.linear):
            lines.append(f"{v} {v} {self.linear[v]!r}")
        for u, v in sorted(self.quadratic):
            lines.append(f"{u} {v} {self.quadratic[(u, v)]!r}")
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "Qubo":
        lines = [line.strip() for line in text.splitlines() if line.strip()]
        if not lines or not lines[0].startswith("# vars:"):
            raise InvalidArgumentError("QUBO dump must start with '# vars: N offset: F'")
        header = lines[0][1:].split()
        try:
            num_vars = int(header[1])
            offset = float(header[3])
        except (IndexError, ValueError):
            raise InvalidArgumentError(f"Malformed QUBO header: {lines[0]}")
        qubo = cls(num_vars, offset=offset)
        for lineno, line in enumerate(lines[1:], start=2):
            if line.startswith("#"):
                continue
            try:
                u, v, coeff = line.split()
                u, v, coeff = int(u), int(v), float(coeff)
            except ValueError:
                raise InvalidArgumentError(f"Malformed QUBO line {lineno}: {line}")
            if u == v:
                qubo.add_linear(u, coeff)
            else:
                qubo.add_quadratic(u, v, coeff)
        return qubo

    def dump(self, path: Path) -> None:
        Path(path).write_text(self.dumps(), encoding="utf-8")

    @classmethod
    def load(cls, path: Path) -> "Qubo":
        return cls.loads(Path(path).read_text(encoding="utf-8"))

    def __repr__(self) -> str:
        return (
            f"Qubo(num_vars={self.num_vars}, linear={len(self.linear)}, "
            f"quadratic={len(self.quadratic)}, offset={self.offset})"
        )


class PenaltyLedger:
    """Penalty coefficient per penalized cycle."""

    def __init__(self, penalties: Optional[Mapping[Cycle, float]] = None):
        self._penalties: Dict[Cycle, float] = {}
        for cycle, penalty in (penalties or {}).items():
            self.set(cycle, penalty)

    @classmethod
    def uniform(cls, n: int, penalty: float, skip_pairs: Iterable[Pair] = ()) -> "PenaltyLedger":
        """Every triple gets the same penalty, except triples touching skip_pairs."""
        skip = set(skip_pairs)
        ledger = cls()
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    cycle = Cycle(i, j, k)
                    if not skip or not cycle.touches(skip):
                        ledger.set(cycle, penalty)
        return ledger

    def set(self, cycle: Cycle, penalty: float) -> None:
        if not penalty > 0:
            raise InvalidArgumentError(f"Penalty for cycle {cycle} must be positive, got {penalty}")
        self._penalties[cycle] = float(penalty)

    def bump(self, cycle: Cycle, increment: float) -> float:
        """Raise an existing cycle's penalty and return the new value."""
        self.set(cycle, self._penalties[cycle] + increment)
        return self._penalties[cycle]

    def get(self, cycle: Cycle, default: Optional[float] = None) -> Optional[float]:
        return self._penalties.get(cycle, default)

    def __getitem__(self, cycle: Cycle) -> float:
        return self._penalties[cycle]

    def __contains__(self, cycle: object) -> bool:
        return cycle in self._penalties

    def __len__(self) -> int:
        return len(self._penalties)

    def __iter__(self) -> Iterator[Cycle]:
        return iter(sorted(self._penalties))

    def items(self) -> List[Tuple[Cycle, float]]:
        return [(cycle, self._penalties[cycle]) for cycle in sorted(self._penalties)]

    def pairs(self) -> Set[Pair]:
        return {p for cycle in self._penalties for p in cycle.pairs()}

    def copy(self) -> "PenaltyLedger":
        return PenaltyLedger(self._penalties)

    def snapshot(self) -> Dict[str, float]:
        """JSON-friendly copy keyed by ``"i,j,k"``."""
        return {str(cycle): penalty for cycle, penalty in self.items()}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PenaltyLedger):
            return NotImplemented
        return self._penalties == other._penalties

    def __repr__(self) -> str:
        return f"PenaltyLedger({self.snapshot()})"


def cycle_penalty(x_ij: int, x_jk: int, x_ik: int) -> int:
    """x_ik + x_ij x_jk - x_ij x_ik - x_jk x_ik: 1 on the two cyclic patterns, else 0."""
    return x_ik + x_ij * x_jk - x_ij * x_ik - x_jk * x_ik


def select_penalty(b: BiasMatrix, total_weight: float, parity: str, epsilon: float = 0.5) -> float:
    """Uniform penalty large enough to make every ground state acyclic."""
    if not epsilon > 0:
        raise InvalidArgumentError(f"epsilon must be positive, got {epsilon}")
    if parity not in PARITIES:
        raise InvalidArgumentError(f"Parity must be one of {PARITIES}, got {parity}")
    bound = total_weight - 2 if parity == "odd" else total_weight
    return max(min(b.max_abs(), bound), 0.0) + epsilon


def _pair_qubo(b: BiasMatrix, ledger: PenaltyLedger, removed: Set[Pair]) -> Qubo:
    active = [p for p in all_pairs(b.n) if p not in removed]
    qubo = Qubo(len(active), labels=active)
    for v, pair in enumerate(active):
        qubo.add_linear(v, b[pair])
    for cycle, penalty in ledger.items():
        ij, jk, ik = (qubo.index_of(p) for p in cycle.pairs())
        qubo.add_linear(ik, penalty)
        qubo.add_quadratic(ij, jk, penalty)
        qubo.add_quadratic(ij, ik, -penalty)
        qubo.add_quadratic(jk, ik, -penalty)
    return qubo


def build_iterative_qubo(b: BiasMatrix, ledger: PenaltyLedger) -> Qubo:
    """Biases on every pair plus the penalty polynomial of each ledger cycle."""
    return _pair_qubo(b, ledger, set())


def build_base_qubo(b: BiasMatrix, P: float) -> Qubo:
    """Biases plus a uniform penalty P on every candidate triple."""
    if not P > 0:
        raise InvalidArgumentError(f"Penalty must be positive, got {P}")
    return build_iterative_qubo(b, PenaltyLedger.uniform(b.n, P))


def build_pair_removal_qubo(b: BiasMatrix, ledger: PenaltyLedger, removed: Iterable[Pair]) -> Qubo:
    """QUBO over the pairs left after removal, re-indexed densely.

    The returned labels map each variable back to its pair.
    """
    removed = set(removed)
    for i, j in removed:
        pair_index(i, j, b.n)
    clash = removed & ledger.pairs()
    if clash:
        raise InvalidArgumentError(f"Removed pairs belong to penalized cycles: {sorted(clash)}")
    qubo = _pair_qubo(b, ledger, removed)
    logger.debug("Reduced QUBO has %d variables (%d pairs removed)", qubo.num_vars, len(removed))
    return qubo
