"""Projection angle sets and distance configuration."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence, Union

import numpy as np

from .errors import InvalidArgumentError

__all__ = [
    "AngleSet",
    "DistanceConfig",
    "VARIANTS",
    "make_angle_set",
    "random_angle_set",
]

VARIANTS = ("etd", "basic_etd", "swd", "exact_wd", "ps", "cosine_etd")


class AngleSet(Sequence[float]):
    """Ordered, duplicate-free projection angles in ``[0, pi)``."""

    __slots__ = ("_angles",)

    def __init__(self, angles):
        vals = tuple(float(a) for a in angles)
        if not vals:
            raise InvalidArgumentError("angle set must be non-empty")
        for a in vals:
            if not (0.0 <= a < math.pi):
                raise InvalidArgumentError(f"angle {a!r} outside [0, pi)")
        if len(set(vals)) != len(vals):
            raise InvalidArgumentError("angle set contains duplicates")
        self._angles = vals

    def ascending(self) -> tuple[float, ...]:
        return tuple(sorted(self._angles))

    def __getitem__(self, i):
        return self._angles[i]

    def __len__(self) -> int:
        return len(self._angles)

    def __iter__(self) -> Iterator[float]:
        return iter(self._angles)

    def __eq__(self, other) -> bool:
        if isinstance(other, AngleSet):
            return self._angles == other._angles
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._angles)

    def __repr__(self) -> str:
        return f"AngleSet({list(self._angles)!r})"


def make_angle_set(n: int) -> AngleSet:
    """Equally spaced angles ``3pi/4 - i*pi/n`` for ``i = 0..n-1``, reduced into ``[0, pi)``.

    The offset is computed as an exact fraction of pi before the single
    multiplication, so multiples of pi/4 come out bit-identical to
    ``k * math.pi / 4``.
    """
    if int(n) != n or n < 1:
        raise InvalidArgumentError(f"number of angles must be a positive integer, got {n!r}")
    n = int(n)
    angles = []
    for i in range(n):
        frac = Fraction(3, 4) - Fraction(i, n)
        if frac < 0:
            frac += 1
        angles.append(float(frac) * math.pi)
    return AngleSet(angles)


def random_angle_set(n: int, seed: int) -> AngleSet:
    """``n`` angles drawn uniformly from ``[0, pi)``, sorted ascending."""
    if int(n) != n or n < 1:
        raise InvalidArgumentError(f"number of angles must be a positive integer, got {n!r}")
    rng = np.random.default_rng(seed)
    draws = np.sort(rng.uniform(0.0, math.pi, size=int(n)))
    return AngleSet(draws.tolist())


AnglesLike = Union[AngleSet, Sequence[AngleSet]]


@dataclass(frozen=True)
class DistanceConfig:
    """Parameters of a pairwise diagram distance.

    ``angles`` is either one :class:`AngleSet` shared by all homology
    dimensions or a sequence with one set per dimension. ``d0_normalization``
    selects the factor applied in the dimension-0 death-only special case:
    ``"count"`` multiplies by the number of angles, ``"root"`` by its p-th root.
    ``n_slices`` is used by the ``swd`` variant and ``max_points`` bounds the
    exact Wasserstein assignment size.
    """

    p: float = 2.0
    angles: AnglesLike = field(default_factory=lambda: make_angle_set(1))
    weights: tuple[float, ...] | None = None
    zero_birth_dim0: bool = False
    variant: str = "etd"
    d0_normalization: str = "count"
    n_slices: int = 50
    max_points: int = 2000

    def __post_init__(self):
        p = float(self.p)
        if not (math.isfinite(p) and p >= 1.0):
            raise InvalidArgumentError(f"p must be a finite real >= 1, got {self.p!r}")
        object.__setattr__(self, "p", p)
        if self.variant not in VARIANTS:
            raise InvalidArgumentError(f"unknown variant {self.variant!r}; expected one of {VARIANTS}")
        if self.d0_normalization not in ("count", "root"):
            raise InvalidArgumentError("d0_normalization must be 'count' or 'root'")
        angles = self.angles
        if not isinstance(angles, AngleSet):
            angles = tuple(angles)
            if not angles:
                raise InvalidArgumentError("angle set must be non-empty")
            if all(isinstance(a, AngleSet) for a in angles):
                pass
            elif any(isinstance(a, AngleSet) for a in angles):
                raise InvalidArgumentError("mixed angle specification")
            else:
                angles = AngleSet(angles)
            object.__setattr__(self, "angles", angles)
        if self.weights is not None:
            weights = tuple(float(w) for w in self.weights)
            if any(not (math.isfinite(w) and w > 0) for w in weights):
                raise InvalidArgumentError("weights must be positive and finite")
            object.__setattr__(self, "weights", weights)
        if int(self.n_slices) != self.n_slices or self.n_slices < 1:
            raise InvalidArgumentError(f"n_slices must be a positive integer, got {self.n_slices!r}")
        if self.max_points < 0:
            raise InvalidArgumentError("max_points must be non-negative")

    @property
    def per_dimension_angles(self) -> bool:
        return not isinstance(self.angles, AngleSet)

    def angles_for(self, j: int) -> AngleSet:
        if isinstance(self.angles, AngleSet):
            return self.angles
        if j >= len(self.angles):
            raise InvalidArgumentError(f"no angle set given for dimension {j} ({len(self.angles)} sets provided)")
        return self.angles[j]

    def weight(self, j: int, n_dims: int) -> float:
        if self.weights is None:
            return 1.0
        if len(self.weights) != n_dims:
            raise InvalidArgumentError(f"{len(self.weights)} weights given for {n_dims} homology dimensions")
        return self.weights[j]

    def tag(self) -> str:
        """Short human-readable description, used as a metric label."""
        parts = [self.variant, f"p={self.p:g}"]
        if self.variant in ("etd", "cosine_etd"):
            if isinstance(self.angles, AngleSet):
                parts.append(f"angles={len(self.angles)}")
            else:
                parts.append("angles=" + ";".join(str(len(a)) for a in self.angles))
        if self.variant == "swd":
            parts.append(f"slices={self.n_slices}")
        if self.weights is not None:
            parts.append("weights=" + ",".join(f"{w:g}" for w in self.weights))
        if self.zero_birth_dim0:
            parts.append(f"d0={self.d0_normalization}")
        return " ".join(parts)
