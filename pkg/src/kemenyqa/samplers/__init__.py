"""QUBO samplers: exhaustive enumeration and simulated annealing."""
from .base import SampleRecord, SampleSet, Sampler
from .exact import ExactSampler, exact_solve
from .annealing import SaParams, SimulatedAnnealingSampler, sa_solve

__all__ = [
    "SampleRecord",
    "SampleSet",
    "Sampler",
    "ExactSampler",
    "exact_solve",
    "SaParams",
    "SimulatedAnnealingSampler",
    "sa_solve",
]
