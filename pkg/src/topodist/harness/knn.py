"""k-nearest-neighbour classification on precomputed distance matrices."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Hashable, Mapping, Sequence

import numpy as np
from sklearn.model_selection import StratifiedShuffleSplit

from ..errors import InvalidArgumentError
from .matrix import DistanceMatrix

WEIGHTINGS = ("uniform", "inverse_distance")


@dataclass(frozen=True)
class KnnConfig:
    k_candidates: tuple[int, ...] = tuple(range(1, 10))
    weightings: tuple[str, ...] = WEIGHTINGS
    n_search_trials: int = 10
    seed: int = 0
    validation_fraction: float = 0.2

    def __post_init__(self):
        ks = tuple(sorted(set(int(k) for k in self.k_candidates)))
        if not ks or ks[0] < 1:
            raise InvalidArgumentError("k_candidates must be non-empty positive integers")
        object.__setattr__(self, "k_candidates", ks)
        ws = tuple(self.weightings)
        if not ws or any(w not in WEIGHTINGS for w in ws):
            raise InvalidArgumentError(f"weightings must be drawn from {WEIGHTINGS}")
        object.__setattr__(self, "weightings", ws)
        if self.n_search_trials < 1:
            raise InvalidArgumentError("n_search_trials must be >= 1")
        if not 0 < self.validation_fraction < 1:
            raise InvalidArgumentError("validation_fraction must lie in (0, 1)")


@dataclass(frozen=True)
class SearchResult:
    k: int
    weighting: str
    accuracy: float
    scores: dict = field(default_factory=dict, compare=False, repr=False)


def _as_values(matrix) -> np.ndarray:
    return matrix.values if isinstance(matrix, DistanceMatrix) else np.asarray(matrix, dtype=float)


def _vote(dists: np.ndarray, labels: Sequence[Hashable], weighting: str):
    zero = dists == 0
    if weighting == "inverse_distance" and zero.any():
        # exact matches dominate: majority among them
        weights = zero.astype(float)
    elif weighting == "inverse_distance":
        weights = 1.0 / dists
    else:
        weights = np.ones(len(dists))
    totals: dict = defaultdict(float)
    for w, y in zip(weights, labels):
        totals[y] += w
    best = max(totals.values())
    return min(y for y, t in totals.items() if t == best)


def knn_classify(
    matrix,
    train_labels: Mapping[int, Hashable],
    query_rows: Sequence[int],
    k: int,
    weighting: str = "uniform",
) -> list:
    """Predict labels for ``query_rows`` from the training rows in ``train_labels``.

    Neighbours are ranked by distance, ties broken by row index. Vote ties go
    to the smallest label. Under inverse-distance weighting a query with
    zero-distance neighbours takes the majority label among those.
    """
    if weighting not in WEIGHTINGS:
        raise InvalidArgumentError(f"unknown weighting {weighting!r}")
    values = _as_values(matrix)
    train_rows = np.array(sorted(train_labels), dtype=int)
    if k < 1 or k > len(train_rows):
        raise InvalidArgumentError(f"k={k} must lie in [1, {len(train_rows)}]")
    row_labels = [train_labels[int(r)] for r in train_rows]
    out = []
    for q in query_rows:
        d = values[int(q), train_rows]
        order = np.argsort(d, kind="stable")[:k]
        out.append(_vote(d[order], [row_labels[i] for i in order], weighting))
    return out


def randomized_search(matrix, labels: Sequence[Hashable], config: KnnConfig | None = None) -> SearchResult:
    """Pick the (k, weighting) pair with the best mean validation accuracy.

    Validation accuracy is averaged over ``config.n_search_trials`` stratified
    random train/validation splits drawn from ``config.seed``. Ties keep the
    smaller k, then the earlier weighting in ``config.weightings``.
    """
    config = config or KnnConfig()
    values = _as_values(matrix)
    labels = list(labels)
    if len(labels) != len(values):
        raise InvalidArgumentError(f"{len(labels)} labels for a {len(values)}-row matrix")
    classes, counts = np.unique(np.array(labels, dtype=object).astype(str), return_counts=True)
    if len(classes) < 2:
        raise InvalidArgumentError("randomized search needs at least two classes")
    if counts.min() < 2:
        raise InvalidArgumentError("every class needs at least two members for stratified splits")
    n = len(labels)
    n_val = max(len(classes), int(round(config.validation_fraction * n)))
    if n - n_val < len(classes):
        raise InvalidArgumentError("too few samples for a stratified split")
    splitter = StratifiedShuffleSplit(n_splits=config.n_search_trials, test_size=n_val, random_state=config.seed)
    strata = [str(y) for y in labels]
    n_train = n - n_val
    candidates = [(k, w) for k in config.k_candidates if k <= n_train for w in config.weightings]
    if not candidates:
        raise InvalidArgumentError("no k candidate fits the training split")
    scores = {c: 0.0 for c in candidates}
    for train, val in splitter.split(np.zeros(n), strata):
        train_labels = {int(i): labels[i] for i in train}
        truth = [labels[i] for i in val]
        for k, w in candidates:
            pred = knn_classify(values, train_labels, val, k, w)
            scores[(k, w)] += sum(a == b for a, b in zip(pred, truth)) / len(truth)
    for c in scores:
        scores[c] /= config.n_search_trials
    best = max(candidates, key=lambda c: scores[c])  # max keeps the first maximum
    return SearchResult(best[0], best[1], scores[best], scores)
