"""qverify: numerics for basic hypergeometric series and q-beta integrals.

The package evaluates q-shifted factorials, unilateral and bilateral
basic hypergeometric series, terminating multi-index sums and
Askey-Wilson-type integrals, and verifies a registry of reciprocity-type
identities against quantified numerical tolerances over seeded parameter
sweeps.
"""

from .qcore import (
    INF,
    CapExceeded,
    ConstraintViolation,
    DivergentSeries,
    DivisionByNearZero,
    NoConvergence,
    PochhammerSpec,
    PoleError,
    QContext,
    QVerifyError,
    SamplingExhausted,
    SeriesResult,
    UnknownParam,
    ipow,
    qfrac,
    qpoch,
    qpoch_inf,
    qpoch_multi,
    terminating_order,
)
from .series import SeriesSpec, eval_bilateral_split, eval_kshifted_sum, eval_phi, eval_psi
from .multisum import MultiIndexSpec, compositions, milne_multisum, milne_rhs_block, omega
from .integrals import (
    AWIntegrandSpec,
    QuadratureResult,
    aw_closed_form,
    aw_residue_correction,
    corl_e_rhs,
    hfun,
    hfun_multi,
    hfun_product,
    integrate_aw,
    thm_e_rhs,
)
from .identities import (
    IdentityCase,
    VerificationReport,
    case_ids,
    check,
    eval_R,
    eval_S,
    eval_multivar_rho,
    eval_rho,
    eval_rho_prime,
    get_case,
    idem,
    registry,
    sample,
    swap_params,
)

__version__ = "0.1.0"

__all__ = [
    "INF",
    "QContext",
    "QVerifyError",
    "PoleError",
    "CapExceeded",
    "DivergentSeries",
    "NoConvergence",
    "ConstraintViolation",
    "DivisionByNearZero",
    "UnknownParam",
    "SamplingExhausted",
    "PochhammerSpec",
    "SeriesResult",
    "SeriesSpec",
    "MultiIndexSpec",
    "AWIntegrandSpec",
    "QuadratureResult",
    "IdentityCase",
    "VerificationReport",
    "ipow",
    "terminating_order",
    "qpoch",
    "qpoch_inf",
    "qpoch_multi",
    "qfrac",
    "eval_phi",
    "eval_psi",
    "eval_bilateral_split",
    "eval_kshifted_sum",
    "compositions",
    "milne_multisum",
    "milne_rhs_block",
    "omega",
    "hfun",
    "hfun_product",
    "hfun_multi",
    "integrate_aw",
    "aw_closed_form",
    "thm_e_rhs",
    "aw_residue_correction",
    "corl_e_rhs",
    "registry",
    "case_ids",
    "get_case",
    "check",
    "sample",
    "idem",
    "swap_params",
    "eval_rho",
    "eval_R",
    "eval_rho_prime",
    "eval_S",
    "eval_multivar_rho",
    "__version__",
]
