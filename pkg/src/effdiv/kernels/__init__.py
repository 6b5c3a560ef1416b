"""Numerical kernels: weights, Hefer and Koszul forms, quadrature of the division formulas."""

from .forms import Form, Layout, WeightError
from .hefer import HeferData, check_identity, hefer_decompose, tau_substitute, tau_target
from .hypersurface import (
    CurveParam,
    conic_charts,
    division_eval_hypersurface,
    eval_omega_prime,
    represent_hypersurface,
    da_wedge_omega_identity,
)
from .koszul import eval_hefer_koszul, eval_koszul, koszul_weight
from .quadrature import ConvergenceError, QuadratureConfig, QuadResult
from .represent import fubini_study_integral, represent_pn
from .weights import ChartPoint, KernelError, delta_eta, eval_alpha, eval_b_B, eval_gamma

__all__ = [
    "Form", "Layout", "WeightError",
    "HeferData", "check_identity", "hefer_decompose", "tau_substitute", "tau_target",
    "CurveParam", "conic_charts", "division_eval_hypersurface", "eval_omega_prime",
    "represent_hypersurface", "da_wedge_omega_identity",
    "eval_hefer_koszul", "eval_koszul", "koszul_weight",
    "ConvergenceError", "QuadratureConfig", "QuadResult",
    "fubini_study_integral", "represent_pn",
    "ChartPoint", "KernelError", "delta_eta", "eval_alpha", "eval_b_B", "eval_gamma",
]
