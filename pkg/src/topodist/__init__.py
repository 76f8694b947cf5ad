"""Extended topological pseudodistances between persistence diagrams."""

from .config import VARIANTS, AngleSet, DistanceConfig, make_angle_set, random_angle_set
from .diagrams import ExtendedDiagram, PersistenceDiagram, PersistencePoint, Violation, validate
from .distances import (
    DistanceResult,
    basic_etd,
    compute_distance,
    cosine_etd,
    etd,
    exact_wasserstein,
    ps_distance,
    sliced_wasserstein,
    wasserstein_1d,
)
from .errors import (
    DiagramValidationError,
    InvalidArgumentError,
    ParseError,
    ResourceLimitError,
    TopodistError,
)
from .projections import (
    lifetime_vector,
    pad_to_common_length,
    project,
    project_to_diagonal,
    projection_vector,
)
from .vectorize import PSVector, ps_collections, ps_vector

__all__ = [
    "VARIANTS",
    "AngleSet",
    "DistanceConfig",
    "make_angle_set",
    "random_angle_set",
    "ExtendedDiagram",
    "PersistenceDiagram",
    "PersistencePoint",
    "Violation",
    "validate",
    "DistanceResult",
    "basic_etd",
    "compute_distance",
    "cosine_etd",
    "etd",
    "exact_wasserstein",
    "ps_distance",
    "sliced_wasserstein",
    "wasserstein_1d",
    "DiagramValidationError",
    "InvalidArgumentError",
    "ParseError",
    "ResourceLimitError",
    "TopodistError",
    "lifetime_vector",
    "pad_to_common_length",
    "project",
    "project_to_diagonal",
    "projection_vector",
    "PSVector",
    "ps_collections",
    "ps_vector",
]

__version__ = "0.1.0"
