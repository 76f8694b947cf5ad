"""Synthetic labelled persistence diagrams for exercising the classification harness."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Sequence

import numpy as np

from ..diagrams import ExtendedDiagram
from ..errors import InvalidArgumentError


@dataclass(frozen=True)
class SyntheticClassSpec:
    """One class: a fixed template diagram plus per-sample Gaussian jitter.

    The template has ``n_points[j]`` points in dimension ``j`` with births
    uniform in ``[0, birth_max]`` and lifetimes ``lifetimes[j]`` scaled by a
    factor uniform in ``[1 - lifetime_spread, 1 + lifetime_spread]``.
    """

    class_id: Hashable
    n_samples: int
    n_points: tuple[int, ...]
    lifetimes: tuple[float, ...]
    noise: float = 0.0
    seed: int = 0
    birth_max: float = 1.0
    lifetime_spread: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "n_points", tuple(int(n) for n in self.n_points))
        object.__setattr__(self, "lifetimes", tuple(float(x) for x in self.lifetimes))
        if self.n_samples < 0 or any(n < 0 for n in self.n_points):
            raise InvalidArgumentError("sample and point counts must be non-negative")
        if len(self.lifetimes) != len(self.n_points):
            raise InvalidArgumentError("need one lifetime per homology dimension")
        if self.noise < 0 or self.birth_max < 0 or any(x < 0 for x in self.lifetimes):
            raise InvalidArgumentError("noise, birth_max and lifetimes must be non-negative")
        if not 0 <= self.lifetime_spread <= 1:
            raise InvalidArgumentError("lifetime_spread must lie in [0, 1]")

    def template(self) -> list[np.ndarray]:
        rng = np.random.default_rng([self.seed, 0])
        out = []
        for n, life in zip(self.n_points, self.lifetimes):
            b = rng.uniform(0.0, self.birth_max, n)
            scale = rng.uniform(1 - self.lifetime_spread, 1 + self.lifetime_spread, n)
            out.append(np.column_stack((b, b + life * scale)))
        return out


def _jitter(template: list[np.ndarray], noise: float, rng: np.random.Generator) -> ExtendedDiagram:
    arrays = []
    for pts in template:
        if noise == 0:
            arrays.append(pts)
            continue
        b = np.maximum(pts[:, 0] + rng.normal(0.0, noise, len(pts)), 0.0)
        d = np.maximum(pts[:, 1] + rng.normal(0.0, noise, len(pts)), b)
        arrays.append(np.column_stack((b, d)))
    return ExtendedDiagram.from_arrays(arrays)


def generate_synthetic_dataset(specs: Sequence[SyntheticClassSpec]) -> tuple[list[ExtendedDiagram], list]:
    """Sample every class; returns ``(diagrams, labels)`` in class order."""
    diagrams, labels = [], []
    for spec in specs:
        template = spec.template()
        for s in range(spec.n_samples):
            rng = np.random.default_rng([spec.seed, 1, s])
            diagrams.append(_jitter(template, spec.noise, rng))
            labels.append(spec.class_id)
    return diagrams, labels
