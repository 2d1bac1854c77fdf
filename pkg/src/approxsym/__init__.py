"""Approximate symmetry of undirected graphs via centrality-guided annealing."""

from .annealing import AnnealConfig, AnnealResult, anneal
from .centrality import CentralityVector, ConvergenceError
from .generators import ModelSpec
from .graphs import (
    Energy,
    Graph,
    Permutation,
    energy,
    energy_delta,
    energy_dense_oracle,
    normalized_symmetry,
    read_edge_list,
    write_edge_list,
)
from .guidance import GuidanceParams, SimilarityMatrix, build_similarity
from .oracle import ExactResult, exact_symmetry
from .rng import SplitMix64, derive_seed
from .stats import PairedSample, TestReport, cohens_d, paired_t_test

__version__ = "0.1.0"

__all__ = [
    "AnnealConfig",
    "AnnealResult",
    "CentralityVector",
    "ConvergenceError",
    "Energy",
    "ExactResult",
    "Graph",
    "GuidanceParams",
    "ModelSpec",
    "PairedSample",
    "Permutation",
    "SimilarityMatrix",
    "SplitMix64",
    "TestReport",
    "anneal",
    "build_similarity",
    "cohens_d",
    "derive_seed",
    "energy",
    "energy_delta",
    "energy_dense_oracle",
    "exact_symmetry",
    "normalized_symmetry",
    "paired_t_test",
    "read_edge_list",
    "write_edge_list",
    "__version__",
]
