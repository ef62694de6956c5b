"""Exact matching engine and the degree-constrained factors built on it."""

from .blossom import max_weight_matching, verify_certificate
from .factors import (
    FactorSpec,
    MatchingResult,
    min_2factor,
    min_2factor_containing_path3,
    min_constrained_path_cover,
    min_weight_factor,
    min_weight_perfect_matching,
)
