"""Wall-clock timing of distance computations on random diagrams."""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from ..config import AngleSet, DistanceConfig
from ..diagrams import ExtendedDiagram
from ..distances import compute_distance

BENCH_COLUMNS = ("metric", "M", "k", "p", "angles", "median_ms", "trials")


@dataclass(frozen=True)
class BenchRow:
    metric: str
    M: int
    k: int
    p: float
    angles: str
    median_ms: float
    trials: int

    def as_dict(self) -> dict:
        return {c: getattr(self, c) for c in BENCH_COLUMNS}


def random_diagram(n_points: int, k: int, rng: np.random.Generator) -> ExtendedDiagram:
    arrays = []
    for _ in range(k + 1):
        b = rng.uniform(0.0, 1.0, n_points)
        arrays.append(np.column_stack((b, b + rng.exponential(0.2, n_points))))
    return ExtendedDiagram.from_arrays(arrays)


def _angles_field(config: DistanceConfig) -> str:
    if config.variant == "swd":
        return str(config.n_slices)
    if config.variant in ("etd", "cosine_etd"):
        if isinstance(config.angles, AngleSet):
            return str(len(config.angles))
        return ";".join(str(len(a)) for a in config.angles)
    if config.variant == "basic_etd":
        return "1"
    return ""


def time_pair(d1, d2, config: DistanceConfig, repetitions: int) -> float:
    """Median milliseconds of ``repetitions`` evaluations after one warm-up call."""
    compute_distance(d1, d2, config)
    samples = []
    for _ in range(repetitions):
        start = time.perf_counter()
        compute_distance(d1, d2, config)
        samples.append((time.perf_counter() - start) * 1e3)
    return statistics.median(samples)


def time_interleaved(pairs: Mapping, config: DistanceConfig, rounds: int = 21, batch: int = 5) -> dict:
    """Median milliseconds per call for each ``key: (d1, d2)`` in ``pairs``.

    The pairs are timed in turn within every round, so slow drift in machine
    state (frequency scaling, allocator and cache warm-up) hits all of them
    alike. Use this when comparing sizes, not ``time_pair`` back to back.
    """
    for d1, d2 in pairs.values():
        compute_distance(d1, d2, config)
    samples: dict = {key: [] for key in pairs}
    for _ in range(rounds):
        for key, (d1, d2) in pairs.items():
            start = time.perf_counter()
            for _ in range(batch):
                compute_distance(d1, d2, config)
            samples[key].append((time.perf_counter() - start) * 1e3 / batch)
    return {key: statistics.median(v) for key, v in samples.items()}


def bench_metrics(
    sizes: Sequence[int],
    configs: Mapping[str, DistanceConfig],
    repetitions: int = 5,
    seed: int = 0,
    k: int = 0,
) -> list[BenchRow]:
    """Time every config at every size ``M``.

    ``M`` counts the points of both diagrams in one homology dimension, so
    each random diagram holds ``M // 2`` points in each of dimensions ``0..k``.
    """
    rows = []
    for m in sizes:
        rng = np.random.default_rng([seed, int(m)])
        d1 = random_diagram(int(m) // 2, k, rng)
        d2 = random_diagram(int(m) - int(m) // 2, k, rng)
        for name, config in configs.items():
            ms = time_pair(d1, d2, config, repetitions)
            rows.append(BenchRow(name, int(m), k, config.p, _angles_field(config), ms, repetitions))
    return rows
