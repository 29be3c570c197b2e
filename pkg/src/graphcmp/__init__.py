"""Decide when graph comparison holds in every metric space, and check it numerically."""

from .classifier import (
    FiveArray,
    Nontrivial,
    Trivial,
    classify,
    classify_connected,
    five_array_from,
    graph_from_five_array,
    is_trivial,
)
from .feasibility import (
    Feasible,
    Indeterminate,
    Infeasible,
    SolverConfig,
    check_comparison,
    negative_type_check,
    verify_model,
)
from .fusion import FusionCertificate, FusionStep, fuse, fusion_reachable, verify_certificate
from .graph import C4, T3, Graph, canonical_form, recognize_multipath
from .metric import ComparisonInstance, FiniteMetricSpace, cycle_metric, star_metric
from .model_line import build_line_model, choose_special_vertex, weighted_distances
from .witness import canonical_violation, violating_instance

__all__ = [
    "C4", "T3", "Graph", "canonical_form", "recognize_multipath",
    "FusionCertificate", "FusionStep", "fuse", "fusion_reachable", "verify_certificate",
    "FiveArray", "Trivial", "Nontrivial", "classify", "classify_connected",
    "five_array_from", "graph_from_five_array", "is_trivial",
    "ComparisonInstance", "FiniteMetricSpace", "cycle_metric", "star_metric",
    "SolverConfig", "Feasible", "Infeasible", "Indeterminate",
    "check_comparison", "negative_type_check", "verify_model",
    "weighted_distances", "choose_special_vertex", "build_line_model",
    "canonical_violation", "violating_instance",
]
