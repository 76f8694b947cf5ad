"""Pairwise distance matrices."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..config import DistanceConfig
from ..diagrams import ExtendedDiagram
from ..distances import _combine, _powsum, compute_distance
from ..errors import InvalidArgumentError, TopodistError
from ..vectorize import BLOCK_SIZE, ps_vector


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric matrix of pairwise distances with zero diagonal."""

    labels: tuple[str, ...]
    values: np.ndarray
    metric_tag: str = ""

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        n = len(self.labels)
        if values.shape != (n, n):
            raise InvalidArgumentError(f"matrix shape {values.shape} does not match {n} labels")
        values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)


def distance_matrix(
    diagrams: Sequence[ExtendedDiagram],
    config: DistanceConfig,
    labels: Sequence[str] | None = None,
    n_jobs: int = 1,
) -> DistanceMatrix:
    """Evaluate ``config`` on every unordered pair and mirror the result.

    Each cell depends only on its pair, so the output does not depend on
    ``n_jobs``. A failing pair re-raises with the pair's labels prepended.
    """
    diagrams = list(diagrams)
    n = len(diagrams)
    if n == 0:
        raise InvalidArgumentError("need at least one diagram")
    labels = tuple(str(x) for x in labels) if labels is not None else tuple(str(i) for i in range(n))
    if len(labels) != n:
        raise InvalidArgumentError(f"{len(labels)} labels for {n} diagrams")
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    evaluate = _ps_evaluator(diagrams, config) if config.variant == "ps" else None

    def cell(pair):
        i, j = pair
        try:
            if evaluate is not None:
                return evaluate(i, j)
            return compute_distance(diagrams[i], diagrams[j], config).value
        except TopodistError as exc:
            raise type(exc)(f"pair ({labels[i]}, {labels[j]}): {exc}") from exc

    if n_jobs > 1 and len(pairs) > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            results = list(pool.map(cell, pairs))
    else:
        results = [cell(pr) for pr in pairs]
    values = np.zeros((n, n))
    for (i, j), v in zip(pairs, results):
        values[i, j] = values[j, i] = v
    return DistanceMatrix(labels, values, config.tag())


def _ps_evaluator(diagrams, config: DistanceConfig):
    # PS blocks depend on one diagram only; an absent dimension is a zero block
    blocks = [ps_vector(d).blocks for d in diagrams]
    zero = np.zeros(BLOCK_SIZE)

    def evaluate(i: int, j: int) -> float:
        a, b = blocks[i], blocks[j]
        n_dims = max(len(a), len(b))
        a = a + (zero,) * (n_dims - len(a))
        b = b + (zero,) * (n_dims - len(b))
        return _combine([_powsum(x - y, config.p) for x, y in zip(a, b)], config)

    return evaluate
