"""
Systems package for the realization engine.
Behaviors, coordinate changes, normalization, realization, trajectory
flows and state-space analysis.
"""

from .behavior import annihilator, characteristic_ideal, is_autonomous
from .dnnl import NormalizationResult, dnnl_ideal, dnnl_module, normalize_polynomial
from .flow import solve_general, solve_strongly_relevant, verify_solution
from .realization import FirstOrderRealization, build_realization
from .transform import UnimodularTransform

__all__ = [
    "FirstOrderRealization",
    "NormalizationResult",
    "UnimodularTransform",
    "annihilator",
    "build_realization",
    "characteristic_ideal",
    "dnnl_ideal",
    "dnnl_module",
    "is_autonomous",
    "normalize_polynomial",
    "solve_general",
    "solve_strongly_relevant",
    "verify_solution",
]
