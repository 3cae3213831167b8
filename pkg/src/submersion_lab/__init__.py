"""Numerical toolkit for (almost) h-conformal slant submersions from flat
hyperkähler R^{4m} to Euclidean R^n."""

from .catalog import EXAMPLES, builtin_example
from .errors import (CriticalPoint, DimensionError, DimensionMismatch, EvaluationFailure,
                     MapSyntaxError, NonConformal, NonConstantRank, NotHorizontal, NotVertical,
                     SubmersionLabError, UnknownExample, UnknownTheorem, ZeroVector)
from .mapdsl import MapSpec, evaluate, hessian, jacobian, parse_map
from .numeric import Subspace, ToleranceConfig
from .oneill import (mean_curvature, nabla_phi_omega, oneill_A, oneill_T, second_fundamental_form,
                     tension_field)
from .quaternionic import standard_triple, verify_triple
from .slant import classify, identity_suite, slant_angle
from .submersion import (Geometry, SamplingPlan, conformality_check, grad_ln_dilation,
                         is_horizontally_homothetic, split_tangent)
from .theorems import THEOREM_IDS, check_theorem, commutation_suite, run_full_suite

__version__ = "0.1.0"

__all__ = [
    "EXAMPLES", "builtin_example",
    "CriticalPoint", "DimensionError", "DimensionMismatch", "EvaluationFailure",
    "MapSyntaxError", "NonConformal", "NonConstantRank", "NotHorizontal", "NotVertical",
    "SubmersionLabError", "UnknownExample", "UnknownTheorem", "ZeroVector",
    "MapSpec", "evaluate", "hessian", "jacobian", "parse_map",
    "Subspace", "ToleranceConfig",
    "mean_curvature", "nabla_phi_omega", "oneill_A", "oneill_T", "second_fundamental_form",
    "tension_field",
    "standard_triple", "verify_triple",
    "classify", "identity_suite", "slant_angle",
    "Geometry", "SamplingPlan", "conformality_check", "grad_ln_dilation",
    "is_horizontally_homothetic", "split_tangent",
    "THEOREM_IDS", "check_theorem", "commutation_suite", "run_full_suite",
]
