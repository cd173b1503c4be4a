"""pqtrig: generalized trigonometric and hyperbolic functions with two parameters.

Public API for numerical work and the verification suite.

Usage:
    from pqtrig import ParamPair, sin_pq, cos_pq, sinh_pq, half_period
    from pqtrig import hyp_from_trig, trig_from_hyp, dual_pairs
    from pqtrig import FormulaId, evaluate_formula, run_suite
"""

from pqtrig.duality import dual_pairs, hyp_from_trig, trig_from_hyp
from pqtrig.errors import (
    ConvergenceError,
    DomainError,
    FormulaDomainError,
    NearDegenerateError,
    PQTrigError,
)
from pqtrig.formulas import FormulaId, double_angle, list_formulas
from pqtrig.formulas import evaluate as evaluate_formula
from pqtrig.gtf import EvalResult, cos_pq, cosh_pq, sin_pq, sinh_pq, tan_pq, tau_pq
from pqtrig.params import ExtReal, ParamPair, conjugate, half_period, pi_pq, r_map
from pqtrig.quadrature import F, G
from pqtrig.verify import CheckReport, SuiteConfig, ode_oracle_sin, run_suite

__all__ = [
    # Parameters
    "ParamPair",
    "ExtReal",
    "conjugate",
    "r_map",
    "half_period",
    "pi_pq",
    # Integrals and functions
    "F",
    "G",
    "EvalResult",
    "sin_pq",
    "cos_pq",
    "sinh_pq",
    "cosh_pq",
    "tan_pq",
    "tau_pq",
    # Duality
    "hyp_from_trig",
    "trig_from_hyp",
    "dual_pairs",
    # Formulas
    "FormulaId",
    "evaluate_formula",
    "double_angle",
    "list_formulas",
    # Verification
    "CheckReport",
    "SuiteConfig",
    "run_suite",
    "ode_oracle_sin",
    # Errors
    "PQTrigError",
    "DomainError",
    "FormulaDomainError",
    "NearDegenerateError",
    "ConvergenceError",
]
