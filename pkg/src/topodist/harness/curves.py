"""Topological curves: per-layer distance to the first diagram, normalized by exact Wasserstein."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence, Union

from ..config import DistanceConfig
from ..diagrams import ExtendedDiagram, PersistenceDiagram
from ..distances import DEFAULT_MAX_POINTS, compute_distance, exact_wasserstein
from ..errors import InvalidArgumentError

Metric = Union[DistanceConfig, Callable[[PersistenceDiagram, PersistenceDiagram], float]]


@dataclass(frozen=True)
class TopologicalCurve:
    """``values[j][i] = log(dist(P_i, P_0) / WD(P_i, P_0))`` for homology dimension ``j``.

    ``0/0`` gives 0; a zero in only one of the two gives ``+inf`` or ``-inf``.
    """

    metric: str
    values: tuple[tuple[float, ...], ...]

    def dimension(self, j: int) -> tuple[float, ...]:
        return self.values[j]


def log_ratio(num: float, den: float) -> float:
    if num == 0 and den == 0:
        return 0.0
    if den == 0:
        return math.inf
    if num == 0:
        return -math.inf
    return math.log(num / den)


def topological_curves(
    sequence: Sequence[ExtendedDiagram],
    metrics: Mapping[str, Metric],
    p: float = 2.0,
    max_points: int = DEFAULT_MAX_POINTS,
) -> dict[str, TopologicalCurve]:
    """Compare every diagram of ``sequence`` with the first one, per homology dimension.

    A metric is either a :class:`DistanceConfig` (its per-dimension terms are
    used and its ``p`` sets the Wasserstein exponent) or a callable on two
    single-dimension diagrams (normalized with exponent ``p``).
    """
    sequence = list(sequence)
    if len(sequence) < 2:
        raise InvalidArgumentError("topological curves need at least two diagrams")
    k = max(d.k for d in sequence)
    sequence = [d.padded(k) for d in sequence]
    first = sequence[0]
    wd_cache: dict[float, list[list[float]]] = {}

    def wd(q: float) -> list[list[float]]:
        if q not in wd_cache:
            wd_cache[q] = [
                [exact_wasserstein(d[j], first[j], q, max_points) for d in sequence] for j in range(k + 1)
            ]
        return wd_cache[q]

    curves = {}
    for name, metric in metrics.items():
        if isinstance(metric, DistanceConfig):
            den = wd(metric.p)
            terms = [compute_distance(d, first, metric).per_dimension for d in sequence]
            num = [[t[j] for t in terms] for j in range(k + 1)]
        else:
            den = wd(float(p))
            num = [[float(metric(d[j], first[j])) for d in sequence] for j in range(k + 1)]
        values = tuple(
            tuple(0.0 if i == 0 else log_ratio(num[j][i], den[j][i]) for i in range(len(sequence)))
            for j in range(k + 1)
        )
        curves[name] = TopologicalCurve(name, values)
    return curves
