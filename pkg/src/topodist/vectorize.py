"""Persistence Statistics: fixed-length summaries of persistence diagrams."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .diagrams import ExtendedDiagram, PersistenceDiagram, as_points

__all__ = [
    "COLLECTIONS",
    "STATISTICS",
    "QUANTILE_LEVELS",
    "BLOCK_SIZE",
    "PSVector",
    "ps_collections",
    "persistent_entropy",
    "ps_block",
    "ps_vector",
]

COLLECTIONS = ("births", "deaths", "midpoints", "lifetimes")
QUANTILE_LEVELS = (0.10, 0.25, 0.50, 0.75, 0.90)
STATISTICS = ("mean", "variance", "q10", "q25", "q50", "q75", "q90")
BLOCK_SIZE = len(COLLECTIONS) * len(STATISTICS) + 2


def ps_collections(diagram) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Births, deaths, midpoints and lifetimes, in point order."""
    pts = as_points(diagram)
    b = pts[:, 0].copy()
    d = pts[:, 1].copy()
    return b, d, (b + d) / 2, d - b


def _summary(values: np.ndarray) -> np.ndarray:
    if len(values) == 0:
        return np.zeros(len(STATISTICS))
    # sorting first fixes the summation order, so the result is permutation invariant
    v = np.sort(values)
    mean = v.sum() / len(v)
    var = np.sum((v - mean) ** 2) / len(v)
    q = np.quantile(v, QUANTILE_LEVELS, method="linear")
    return np.concatenate(([mean, var], q))


def persistent_entropy(lifetimes) -> float:
    """Shannon entropy (natural log) of the normalized positive lifetimes."""
    life = np.sort(np.asarray(lifetimes, dtype=float))
    life = life[life > 0]
    total = life.sum()
    if total <= 0:
        return 0.0
    share = life / total
    share = share[share > 0]  # tiny lifetimes can underflow; x log x -> 0
    return float(max(0.0, -np.sum(share * np.log(share))))


def ps_block(diagram) -> np.ndarray:
    """The ``BLOCK_SIZE`` statistics of one diagram; all zeros when empty."""
    cols = ps_collections(diagram)
    stats = [_summary(c) for c in cols]
    lifetimes = cols[3]
    n_off = float(np.count_nonzero(lifetimes > 0))
    return np.concatenate(stats + [np.array([n_off, persistent_entropy(lifetimes)])])


@dataclass(frozen=True)
class PSVector:
    """Per-dimension PS blocks.

    Each block lays out (births, deaths, midpoints, lifetimes) x
    (mean, variance, q10, q25, q50, q75, q90), then the off-diagonal count,
    then the entropy.
    """

    blocks: tuple[np.ndarray, ...]

    def as_array(self) -> np.ndarray:
        return np.concatenate(self.blocks)

    def get(self, dimension: int, collection: str, statistic: str) -> float:
        block = self.blocks[dimension]
        return float(block[COLLECTIONS.index(collection) * len(STATISTICS) + STATISTICS.index(statistic)])

    def n_offdiagonal(self, dimension: int) -> int:
        return int(self.blocks[dimension][-2])

    def entropy(self, dimension: int) -> float:
        return float(self.blocks[dimension][-1])

    @staticmethod
    def feature_names(k: int) -> list[str]:
        names = []
        for j in range(k + 1):
            names += [f"h{j}_{c}_{s}" for c in COLLECTIONS for s in STATISTICS]
            names += [f"h{j}_n_offdiagonal", f"h{j}_entropy"]
        return names


def ps_vector(diagram: ExtendedDiagram | PersistenceDiagram, k: int | None = None) -> PSVector:
    """PS vector of an extended diagram, optionally padded to dimension ``k``."""
    if isinstance(diagram, PersistenceDiagram):
        diagram = ExtendedDiagram.from_mapping({diagram.dimension: diagram.points})
    if k is not None:
        diagram = diagram.padded(k)
    return PSVector(tuple(ps_block(d) for d in diagram))
