"""One-dimensional reductions of persistence diagrams.

Sorted vectors are plain float arrays in non-increasing order.
"""

from __future__ import annotations

import math

import numpy as np

from .diagrams import ExtendedDiagram, PersistenceDiagram, as_points

__all__ = [
    "direction",
    "project",
    "project_points",
    "project_to_diagonal",
    "balanced",
    "sort_desc",
    "lifetime_vector",
    "projection_vector",
    "pad_to_common_length",
]

_R = math.sqrt(0.5)
# Exact (cos, sin) at multiples of pi/4 so that diagonal points vanish at 3pi/4
# and pi/2 selects deaths without a 6e-17 birth leak.
_EXACT = {
    0.0: (1.0, 0.0),
    math.pi / 4: (_R, _R),
    math.pi / 2: (0.0, 1.0),
    3 * math.pi / 4: (-_R, _R),
}


def direction(theta: float) -> tuple[float, float]:
    """Return ``(cos theta, sin theta)``."""
    theta = float(theta)
    exact = _EXACT.get(theta)
    if exact is not None:
        return exact
    return math.cos(theta), math.sin(theta)


def project(point, theta: float) -> float:
    """``birth * cos(theta) + death * sin(theta)``."""
    c, s = direction(theta)
    b, d = point
    return float(b) * c + float(d) * s


def project_points(points: np.ndarray, theta: float) -> np.ndarray:
    c, s = direction(theta)
    # elementwise on purpose: a BLAS matvec may fuse into FMA and break exact zeros
    return points[:, 0] * c + points[:, 1] * s


def _midpoint_points(points: np.ndarray) -> np.ndarray:
    mid = (points[:, 0] + points[:, 1]) * 0.5
    return np.column_stack((mid, mid))


def project_to_diagonal(diagram):
    """Orthogonal projection of every point onto the diagonal, keeping multiplicity."""
    if isinstance(diagram, PersistenceDiagram):
        return PersistenceDiagram(_midpoint_points(diagram.points), diagram.dimension)
    return _midpoint_points(as_points(diagram))


def balanced(p1: np.ndarray, p2: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``(P1 + diag(P2), P2 + diag(P1))``: two point sets of equal size."""
    s1 = np.concatenate((p1, _midpoint_points(p2)))
    s2 = np.concatenate((p2, _midpoint_points(p1)))
    return s1, s2


def sort_desc(values: np.ndarray) -> np.ndarray:
    out = np.sort(values)
    return out[::-1]


def lifetime_vector(diagram: ExtendedDiagram) -> list[np.ndarray]:
    """Per dimension, the lifetimes ``death - birth`` sorted non-increasingly."""
    return [sort_desc(d.deaths - d.births) for d in diagram]


def projection_vector(diagram: ExtendedDiagram, theta: float) -> list[np.ndarray]:
    """Per dimension, the projections onto direction ``theta`` sorted non-increasingly."""
    return [sort_desc(project_points(d.points, theta)) for d in diagram]


def pad_to_common_length(a, b) -> tuple[np.ndarray, np.ndarray]:
    """Extend the shorter sorted vector with zeros.

    Zeros are placed at their sorted position, which for non-negative input
    is the tail; this keeps signed projection vectors sorted as well.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    n = max(len(a), len(b))

    def fill(v):
        if len(v) == n:
            return v
        return sort_desc(np.concatenate((v, np.zeros(n - len(v)))))

    return fill(a), fill(b)
