"""Exact experiments on Tverberg partitions, Tverberg types, stair-convexity
and separation statements for point sequences."""

__version__ = "0.1.0"

from .convex import (
    PointSequence,
    PreconditionError,
    TverbergCertificate,
    enumerate_tverberg_partitions,
    point_in_simplex,
    radon_partition,
    verify_tverberg,
)
from .kernel import DimensionError, GenericityError, Sign, SingularSystemError, det, orientation, solve_linear
from .type_algebra import TverbergType, decode, encode, enumerate_colorful, is_colorful, t_param

__all__ = [
    "DimensionError",
    "GenericityError",
    "PointSequence",
    "PreconditionError",
    "Sign",
    "SingularSystemError",
    "TverbergCertificate",
    "TverbergType",
    "decode",
    "det",
    "encode",
    "enumerate_colorful",
    "enumerate_tverberg_partitions",
    "is_colorful",
    "orientation",
    "point_in_simplex",
    "radon_partition",
    "solve_linear",
    "t_param",
    "verify_tverberg",
]
