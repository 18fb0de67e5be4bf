"""Weierstrass semigroups of the Garcia-Stichtenoth second tower and bounds on
relative generalized Hamming weights of nested one-point codes."""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import (
    DomainError,
    GsrghwError,
    InvalidParameter,
    InvariantViolation,
    ParameterTooLarge,
    UndefinedConstruction,
    WorkloadExceeded,
)
from .kernels import BACKEND
from .semigroup import SemigroupTable, TowerParams, build_explicit, build_recursive
from .values import BoundValue
from .rghw import CodePairSpec, ShiftSet, ZResult, rghw_lower_exact, shifted_gap_count, z_exact, z_full
from .bounds import (
    ghw_abundant,
    ghw_basic,
    ghw_beyond_genus,
    highest_rghw,
    propemme_bound,
    propemme_g,
    propmu_closed,
    propmu_recursion_check,
    singleton_upper,
)
from .asymptotics import coro_ag_delta, cormu2_M, cormu_g, cormu_limit, sample_curves
from .ramp import RampReport, privacy_bounds, reconstruction_bounds, scheme_report

__all__ = [
    "BACKEND",
    "BoundValue",
    "CodePairSpec",
    "DomainError",
    "GsrghwError",
    "InvalidParameter",
    "InvariantViolation",
    "ParameterTooLarge",
    "RampReport",
    "SemigroupTable",
    "ShiftSet",
    "TowerParams",
    "UndefinedConstruction",
    "WorkloadExceeded",
    "ZResult",
    "build_explicit",
    "build_recursive",
    "coro_ag_delta",
    "cormu2_M",
    "cormu_g",
    "cormu_limit",
    "ghw_abundant",
    "ghw_basic",
    "ghw_beyond_genus",
    "highest_rghw",
    "privacy_bounds",
    "propemme_bound",
    "propemme_g",
    "propmu_closed",
    "propmu_recursion_check",
    "reconstruction_bounds",
    "rghw_lower_exact",
    "sample_curves",
    "scheme_report",
    "shifted_gap_count",
    "singleton_upper",
    "z_exact",
    "z_full",
]
