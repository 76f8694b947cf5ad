"""Persistence diagram types with multiset semantics."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, NamedTuple, Sequence, Union

import numpy as np

from .errors import DiagramValidationError, InvalidArgumentError

__all__ = [
    "PersistencePoint",
    "PersistenceDiagram",
    "ExtendedDiagram",
    "Violation",
    "validate",
    "as_points",
]


class PersistencePoint(NamedTuple):
    birth: float
    death: float


@dataclass(frozen=True)
class Violation:
    """One offending point found by :func:`validate`."""

    dimension: int
    index: int
    reason: str
    birth: float
    death: float

    def __str__(self) -> str:
        return f"dim {self.dimension}, point {self.index} ({self.birth!r}, {self.death!r}): {self.reason}"


def _to_array(points) -> np.ndarray:
    if isinstance(points, PersistenceDiagram):
        return points.points
    arr = np.asarray(points, dtype=float)
    if arr.size == 0:
        return np.empty((0, 2), dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise InvalidArgumentError(f"points must have shape (n, 2), got {arr.shape}")
    return arr


def _violations(arr: np.ndarray, dimension: int) -> list[Violation]:
    found = []
    finite = np.isfinite(arr).all(axis=1)
    for i in np.flatnonzero(~finite):
        found.append(Violation(dimension, int(i), "non-finite coordinate", float(arr[i, 0]), float(arr[i, 1])))
    for i in np.flatnonzero(finite & (arr[:, 0] > arr[:, 1])):
        found.append(Violation(dimension, int(i), "birth > death", float(arr[i, 0]), float(arr[i, 1])))
    found.sort(key=lambda v: v.index)
    return found


def _canonical(arr: np.ndarray) -> np.ndarray:
    if len(arr) < 2:
        return arr
    order = np.lexsort((arr[:, 1], arr[:, 0]))
    return arr[order]


class PersistenceDiagram:
    """A multiset of (birth, death) points for one homology dimension.

    Points are stored as a read-only ``(n, 2)`` float array. Equality ignores
    point order but respects multiplicity.
    """

    __slots__ = ("dimension", "_points")

    def __init__(self, points=(), dimension: int = 0, *, check: bool = True):
        if int(dimension) != dimension or dimension < 0:
            raise InvalidArgumentError(f"dimension must be a non-negative integer, got {dimension!r}")
        arr = np.array(_to_array(points), dtype=float, copy=True)
        if check:
            bad = _violations(arr, int(dimension))
            if bad:
                raise DiagramValidationError(str(bad[0]), bad)
        arr.setflags(write=False)
        self.dimension = int(dimension)
        self._points = arr

    @property
    def points(self) -> np.ndarray:
        return self._points

    @property
    def births(self) -> np.ndarray:
        return self._points[:, 0]

    @property
    def deaths(self) -> np.ndarray:
        return self._points[:, 1]

    def canonical(self) -> np.ndarray:
        """Points sorted by (birth, death)."""
        return _canonical(self._points)

    def __len__(self) -> int:
        return len(self._points)

    def __iter__(self) -> Iterator[PersistencePoint]:
        for b, d in self._points:
            yield PersistencePoint(float(b), float(d))

    def __eq__(self, other) -> bool:
        if not isinstance(other, PersistenceDiagram):
            return NotImplemented
        return (
            self.dimension == other.dimension
            and len(self) == len(other)
            and np.array_equal(self.canonical(), other.canonical())
        )

    def __hash__(self) -> int:
        return hash((self.dimension, self.canonical().tobytes()))

    def __repr__(self) -> str:
        return f"PersistenceDiagram(dimension={self.dimension}, n={len(self)})"


def as_points(diagram) -> np.ndarray:
    """Return the ``(n, 2)`` point array of a diagram or array-like."""
    return _to_array(diagram)


class ExtendedDiagram:
    """Diagrams for homology dimensions ``0..k`` of one dataset.

    Missing dimensions are represented by empty diagrams, so the sequence is
    dense. Trailing empty dimensions do not affect equality.
    """

    __slots__ = ("_diagrams",)

    def __init__(self, diagrams: Sequence[PersistenceDiagram] = ()):
        diagrams = tuple(diagrams)
        if not diagrams:
            diagrams = (PersistenceDiagram((), 0),)
        for j, dgm in enumerate(diagrams):
            if not isinstance(dgm, PersistenceDiagram):
                raise InvalidArgumentError(f"entry {j} is not a PersistenceDiagram")
            if dgm.dimension != j:
                raise InvalidArgumentError(f"entry {j} has dimension {dgm.dimension}")
        self._diagrams = diagrams

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, object], k: int | None = None, *, check: bool = True) -> "ExtendedDiagram":
        """Build from ``{dimension: points}``; absent dimensions become empty."""
        dims = [int(j) for j in mapping]
        if any(j < 0 for j in dims):
            raise InvalidArgumentError("dimensions must be non-negative")
        top = max(dims, default=0)
        if k is not None:
            if k < top:
                raise InvalidArgumentError(f"k={k} is smaller than the largest dimension {top}")
            top = k
        return cls(PersistenceDiagram(mapping.get(j, ()), j, check=check) for j in range(top + 1))

    @classmethod
    def from_arrays(cls, arrays: Sequence[object], *, check: bool = True) -> "ExtendedDiagram":
        return cls(PersistenceDiagram(a, j, check=check) for j, a in enumerate(arrays))

    @property
    def k(self) -> int:
        return len(self._diagrams) - 1

    @property
    def diagrams(self) -> tuple[PersistenceDiagram, ...]:
        return self._diagrams

    def padded(self, k: int) -> "ExtendedDiagram":
        """Extend with empty diagrams up to dimension ``k``."""
        if k <= self.k:
            return self
        extra = tuple(PersistenceDiagram((), j) for j in range(self.k + 1, k + 1))
        return ExtendedDiagram(self._diagrams + extra)

    def n_points(self) -> int:
        return sum(len(d) for d in self._diagrams)

    def _trimmed(self) -> tuple[PersistenceDiagram, ...]:
        dgms = self._diagrams
        end = len(dgms)
        while end > 1 and len(dgms[end - 1]) == 0:
            end -= 1
        return dgms[:end]

    def __len__(self) -> int:
        return len(self._diagrams)

    def __getitem__(self, j: int) -> PersistenceDiagram:
        return self._diagrams[j]

    def __iter__(self) -> Iterator[PersistenceDiagram]:
        return iter(self._diagrams)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExtendedDiagram):
            return NotImplemented
        return self._trimmed() == other._trimmed()

    def __hash__(self) -> int:
        return hash(self._trimmed())

    def __repr__(self) -> str:
        sizes = ", ".join(f"{d.dimension}: {len(d)}" for d in self._diagrams)
        return f"ExtendedDiagram({{{sizes}}})"


DiagramLike = Union[ExtendedDiagram, PersistenceDiagram, Mapping[int, object]]


def validate(diagram: DiagramLike) -> list[Violation]:
    """List every point with birth > death or a non-finite coordinate.

    Accepts an :class:`ExtendedDiagram` (possibly built with ``check=False``),
    a single :class:`PersistenceDiagram`, or a raw ``{dimension: points}``
    mapping. A valid input yields an empty list.
    """
    if isinstance(diagram, PersistenceDiagram):
        return _violations(diagram.points, diagram.dimension)
    if isinstance(diagram, ExtendedDiagram):
        parts = [(d.dimension, d.points) for d in diagram]
    else:
        parts = [(int(j), _to_array(pts)) for j, pts in sorted(diagram.items())]
    report: list[Violation] = []
    for j, arr in parts:
        report.extend(_violations(arr, j))
    return report
