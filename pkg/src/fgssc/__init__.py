"""Subspace clustering from corrupted and incomplete data: sparse
self-representation via ADMM, greedy re-qualification of suspected errors as
erasures, spectral clustering, benchmark generators, and sweep tooling."""

from .admm import SscOutput, ssc_solve
from .core import GreedyConfig, SolverConfig, lambdas, mu_e, mu_z, shrink
from .greedy import FgsscOutput, GsscOutput, fgssc_solve, gssc_solve, schedule_alphas
from .spectral import build_affinity, misclassification, spectral_cluster
from .synth import CorruptionSpec, GroundTruth, corrupt, gen_model1, gen_model2

__all__ = [
    "CorruptionSpec",
    "FgsscOutput",
    "GreedyConfig",
    "GroundTruth",
    "GsscOutput",
    "SolverConfig",
    "SscOutput",
    "build_affinity",
    "corrupt",
    "fgssc_solve",
    "gen_model1",
    "gen_model2",
    "gssc_solve",
    "lambdas",
    "misclassification",
    "mu_e",
    "mu_z",
    "schedule_alphas",
    "shrink",
    "spectral_cluster",
    "ssc_solve",
]

__version__ = "0.1.0"
