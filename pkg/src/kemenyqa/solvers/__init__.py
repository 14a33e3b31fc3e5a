"""QUBO solver pipelines."""
from .inference import InferenceResult, infer_removed, vote_of_third
from .options import PENALTY_MODES, IterationRecord, IterOptions, Solution
from .pipeline import CycleLoop, resolve_parity, solve_base, solve_iterative, solve_pair_removal
from .selection import STRATEGIES, remove_pairs_promega, remove_pairs_prhb

__all__ = [
    "CycleLoop",
    "InferenceResult",
    "IterOptions",
    "IterationRecord",
    "PENALTY_MODES",
    "STRATEGIES",
    "Solution",
    "infer_removed",
    "remove_pairs_prhb",
    "remove_pairs_promega",
    "resolve_parity",
    "solve_base",
    "solve_iterative",
    "solve_pair_removal",
    "vote_of_third",
]
