"""Generalized Euler-Briggs constants to arbitrary precision.

gamma(Omega, a, q) is computed both from its L(1, chi) closed form and from
the defining limit; relation probes run on top of both.
"""

__version__ = "0.1.0"

from .arith import BigReal, PrecisionContext, const_gamma, const_pi, log_natural
from .characters import (
    DirichletCharacter,
    RootOfUnity,
    conjugate,
    enumerate_characters,
    evaluate,
    parity,
    totient,
)
from .constants import (
    EBCKey,
    IdentityReport,
    PeriodicFunction,
    PrimeSet,
    direct_sum_oracle,
    gamma_aq,
    gamma_omega,
    gamma_omega_aq,
    gamma_omega_qq,
    periodic_dirichlet_sum,
    periodic_series_oracle,
    verify_identity,
)
from .errors import (
    ClosedFormUnavailableError,
    CrossCheckError,
    DivergenceError,
    DomainError,
    EBCError,
    HypothesisError,
    InsufficientPrecisionError,
    RelationSearchError,
    UndefinedConstantError,
)
from .lfunctions import LValue, digamma_rational, l_one_digamma, l_one_series

__all__ = [
    "BigReal", "PrecisionContext", "const_gamma", "const_pi", "log_natural",
    "DirichletCharacter", "RootOfUnity", "conjugate", "enumerate_characters", "evaluate",
    "parity", "totient",
    "EBCKey", "IdentityReport", "PeriodicFunction", "PrimeSet", "direct_sum_oracle",
    "gamma_aq", "gamma_omega", "gamma_omega_aq", "gamma_omega_qq",
    "periodic_dirichlet_sum", "periodic_series_oracle", "verify_identity",
    "ClosedFormUnavailableError", "CrossCheckError", "DivergenceError", "DomainError",
    "EBCError", "HypothesisError", "InsufficientPrecisionError", "RelationSearchError",
    "UndefinedConstantError",
    "LValue", "digamma_rational", "l_one_digamma", "l_one_series",
]
