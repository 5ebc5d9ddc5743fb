"""Exact-arithmetic toolkit for sets of large returns of measure-preserving
systems, Behrend-type solution-free sets, and finite IP/VIP combinatorics."""

__version__ = "0.1.0"

from .exactnum import IntervalSet, Rational, frac_str, parse_frac
from .polyring import (
    IntPoly,
    IntersectivityVerdict,
    essentially_distinct,
    find_degree_preserving_direction,
    joint_intersectivity,
    q_linear_independence,
    restrict_to_line,
)
from .ipcomb import (
    VipSample,
    discrete_derivative,
    eta_decompose,
    eta_set_function,
    ip_r_set,
    ip_r_star_witness_search,
    subset_sum,
    vip_degree_check,
)
from .systems import (
    Enclosure,
    FiniteCyclicSystem,
    ReturnSetReport,
    SkewSystem,
    cyclic_correlation,
    return_set_window,
    skew_correlation,
    syndeticity_report,
)
from .constructions import (
    BehrendSet,
    DphjInstance,
    IntervalFamily,
    behrend_lambda,
    build_small_intersection_counterexample,
    conditional_constants,
    diophantine_set,
    dphj_search,
    find_diophantine_shift,
    interval_family,
    lambda_fourier,
    modulus_counterexample,
    verify_solution_free,
)

__all__ = [
    "IntervalSet", "Rational", "frac_str", "parse_frac",
    "IntPoly", "IntersectivityVerdict", "essentially_distinct",
    "find_degree_preserving_direction", "joint_intersectivity",
    "q_linear_independence", "restrict_to_line",
    "VipSample", "discrete_derivative", "eta_decompose", "eta_set_function",
    "ip_r_set", "ip_r_star_witness_search", "subset_sum", "vip_degree_check",
    "Enclosure", "FiniteCyclicSystem", "ReturnSetReport", "SkewSystem",
    "cyclic_correlation", "return_set_window", "skew_correlation",
    "syndeticity_report",
    "BehrendSet", "DphjInstance", "IntervalFamily", "behrend_lambda",
    "build_small_intersection_counterexample", "conditional_constants",
    "diophantine_set", "dphj_search", "find_diophantine_shift",
    "interval_family", "lambda_fourier", "modulus_counterexample",
    "verify_solution_free",
]
