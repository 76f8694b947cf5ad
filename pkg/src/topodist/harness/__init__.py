"""Experiment harness: distance matrices, kNN search, topological curves, synthetic data, timing."""

from .bench import BENCH_COLUMNS, BenchRow, bench_metrics
from .curves import TopologicalCurve, topological_curves
from .knn import KnnConfig, SearchResult, knn_classify, randomized_search
from .matrix import DistanceMatrix, distance_matrix
from .synthetic import SyntheticClassSpec, generate_synthetic_dataset

__all__ = [
    "BENCH_COLUMNS",
    "BenchRow",
    "bench_metrics",
    "TopologicalCurve",
    "topological_curves",
    "KnnConfig",
    "SearchResult",
    "knn_classify",
    "randomized_search",
    "DistanceMatrix",
    "distance_matrix",
    "SyntheticClassSpec",
    "generate_synthetic_dataset",
]
