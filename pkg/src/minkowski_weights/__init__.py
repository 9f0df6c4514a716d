"""Exact codimension-one Minkowski weights on fans over 3-polytopes, over Q(sqrt 5)."""

from .balance import (
    AffineSolutionSet,
    BalancingSystem,
    EchelonBasis,
    Verdict,
    WeightVector,
    assemble_system,
    constrained_solve,
    is_balanced,
    max_support_weight,
    support_scan,
    symmetric_space,
    weight_space,
)
from .field import QuadraticScalar, format_scalar, parse_scalar, sign, to_float
from .skeleton import (
    PolytopeSkeleton,
    builtin_polytope,
    classify_edges_by_axis,
    edges_from_squared_distance,
    link_cycle,
    validate,
)

__all__ = [
    "AffineSolutionSet",
    "BalancingSystem",
    "EchelonBasis",
    "PolytopeSkeleton",
    "QuadraticScalar",
    "Verdict",
    "WeightVector",
    "assemble_system",
    "builtin_polytope",
    "classify_edges_by_axis",
    "constrained_solve",
    "edges_from_squared_distance",
    "format_scalar",
    "is_balanced",
    "link_cycle",
    "max_support_weight",
    "parse_scalar",
    "sign",
    "support_scan",
    "symmetric_space",
    "to_float",
    "validate",
    "weight_space",
]
