"""Two-interval sine-kernel determinant asymptotics with numerical oracles."""

import os as _os

# BLAS reads its thread limits at load time, so the cap must be in place
# before the first numpy import anywhere in the package
_cap = _os.environ.get("TWIN_GAP_THREADS")
if _cap:
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS",
                 "MKL_NUM_THREADS", "NUMEXPR_NUM_THREADS"):
        _os.environ.setdefault(_var, _cap)

from .asymptotics import (ExpansionBreakdown, Regime, RegimeThresholds,
                          WIDOM_DYSON_C0, barnes_g_int, expansion_merging,
                          expansion_merging_limit, expansion_one_gap,
                          expansion_two_gap, legendre_kappa, nearest_frac,
                          select_regime)
from .elliptic import (EllipticData, GapPair, complete_elliptic, elliptic_data,
                       elliptic_v2_derivatives, tail_integral)
from .errors import (AmbiguousRegimeError, DomainError,
                     IllConditionedGeometryError, SeriesTruncationError,
                     TwinGapError)
from .identities import (ResidualReport, derivative_identity_residuals, g1hat,
                         period_relation_residual, run_suite,
                         theta_identity_residual, theta_integral_residuals)
from .oracle import (OracleResult, fredholm_logdet, separation_factorization_gap,
                     toeplitz_logdet)
from .theta import (ThetaConstants, ThetaContext, theta_constants, theta_eval,
                    theta_quasi_period_residual, theta3_modular_residual)
from .two_gap import (DerivedGeometry, abel_map, derive_geometry,
                      geometry_v2_limit_checks, q_polynomial)

__version__ = "0.1.0"

__all__ = [
    "AmbiguousRegimeError", "DerivedGeometry", "DomainError", "EllipticData",
    "ExpansionBreakdown", "GapPair", "IllConditionedGeometryError",
    "OracleResult", "Regime", "RegimeThresholds", "ResidualReport",
    "SeriesTruncationError", "ThetaConstants", "ThetaContext", "TwinGapError",
    "WIDOM_DYSON_C0", "abel_map", "barnes_g_int", "complete_elliptic",
    "derivative_identity_residuals", "derive_geometry", "elliptic_data",
    "elliptic_v2_derivatives", "expansion_merging", "expansion_merging_limit",
    "expansion_one_gap", "expansion_two_gap", "fredholm_logdet", "g1hat",
    "geometry_v2_limit_checks", "legendre_kappa", "nearest_frac",
    "period_relation_residual", "q_polynomial", "run_suite",
    "select_regime", "separation_factorization_gap", "tail_integral",
    "theta3_modular_residual", "theta_constants", "theta_eval",
    "theta_identity_residual", "theta_integral_residuals",
    "theta_quasi_period_residual", "toeplitz_logdet",
]
