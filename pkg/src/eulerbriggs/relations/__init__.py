"""Integer-relation detection and the prime-set combinatorics around it."""

from .engine import (
    DISCLAIMER,
    FOUND,
    NONE_BELOW_HEIGHT,
    RelationQuery,
    RelationResult,
    find_integer_relation,
    find_relation,
    required_precision,
)
from .families import IrreducibilityResult, SetFamily, irreducible_family_check, parse_family
from .lll import lll_reduce
from .probes import (
    DimensionProbeSpec,
    DimensionReport,
    StarConstants,
    compute_star_constants,
    dimension_probe,
    gamma_family,
    probe_algebraic_ratio,
    probe_gamma_family,
    schanuel_prediction,
    schanuel_probe,
)
from .pslq import pslq

__all__ = [
    "DISCLAIMER", "FOUND", "NONE_BELOW_HEIGHT", "RelationQuery", "RelationResult",
    "find_integer_relation", "find_relation", "required_precision",
    "IrreducibilityResult", "SetFamily", "irreducible_family_check", "parse_family",
    "lll_reduce", "pslq",
    "DimensionProbeSpec", "DimensionReport", "StarConstants", "compute_star_constants",
    "dimension_probe", "gamma_family", "probe_algebraic_ratio", "probe_gamma_family",
    "schanuel_probe", "schanuel_prediction",
]
