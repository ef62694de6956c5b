"""Differential approximation for the symmetric traveling salesman problem.

``tour_even`` and ``tour_odd`` return tours whose length is within a 3/4
differential ratio of optimal; ``oracle`` supplies exact references.
"""

from .core import (
    EdgeSet,
    Instance,
    canonical_tour,
    classify,
    cycles_of,
    is_valid_pair,
    path_decomposition,
    total_length,
)
from .errors import (
    AuditError,
    DiffTSPError,
    InfeasibleError,
    InternalInvariantError,
    MalformedInputError,
    PreconditionError,
    ResourceGuardError,
    SteeringError,
)
from .generate import random_instance
from .io import dump_native, parse_instance, read_instance
from .oracle import DiffReport, differential_ratio, enumerate_structures, exact_tour
from .pathcover import Steering, four_path_covers, movable_edges
from .tour_even import audit_union, tour_even
from .tour_odd import audit_odd, inner_construction, tour_odd


def solve(inst: Instance, **kwargs):
    """Dispatch on parity: ``tour_even`` for even ``n``, ``tour_odd`` for odd."""
    return tour_even(inst, **kwargs) if inst.n % 2 == 0 else tour_odd(inst, **kwargs)


__all__ = [
    "AuditError",
    "DiffReport",
    "DiffTSPError",
    "EdgeSet",
    "InfeasibleError",
    "Instance",
    "InternalInvariantError",
    "MalformedInputError",
    "PreconditionError",
    "ResourceGuardError",
    "Steering",
    "SteeringError",
    "audit_odd",
    "audit_union",
    "canonical_tour",
    "classify",
    "cycles_of",
    "differential_ratio",
    "dump_native",
    "enumerate_structures",
    "exact_tour",
    "four_path_covers",
    "inner_construction",
    "is_valid_pair",
    "movable_edges",
    "parse_instance",
    "path_decomposition",
    "random_instance",
    "read_instance",
    "solve",
    "total_length",
    "tour_even",
    "tour_odd",
]
