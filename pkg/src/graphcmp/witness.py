"""Concrete violating instances for graphs with nontrivial comparison.

The four-cycle fails in the 4-cycle metric and the tripod fails in the
three-legged star.  A fusion certificate from ``g`` to one of them carries
that failure back to ``g``: fused vertices simply share a point.
"""

from __future__ import annotations

from typing import Sequence

from .classifier import Nontrivial, classify
from .fusion import certificate_problem, lift_labeling
from .graph import C4, T3, Graph
from .metric import ComparisonInstance, cycle_metric, star_metric


class WitnessError(ValueError):
    pass


def canonical_violation(target: str) -> ComparisonInstance:
    if target == "C4":
        return ComparisonInstance(C4, cycle_metric(4), (0, 1, 2, 3))
    if target == "T3":
        # star_graph and star_metric both put the center at index 0
        return ComparisonInstance(T3, star_metric(3, 1.0), (0, 1, 2, 3))
    raise WitnessError(f"unknown target {target!r}")


def violating_instance(
    g: Graph, cls: Nontrivial, component: Sequence[int] | None = None
) -> ComparisonInstance:
    """Instance on ``g`` that has no model configuration.

    ``cls.certificate`` starts from ``g`` itself, or from the subgraph
    induced on ``component`` when that is given; vertices outside the
    component are all placed on point 0.
    """
    problem = certificate_problem(cls.certificate)
    if problem is not None:
        raise WitnessError(f"certificate does not verify: {problem}")
    base = canonical_violation(cls.target)
    lifted = lift_labeling(cls.certificate, base.labeling)
    if component is None:
        if cls.certificate.source != g:
            raise WitnessError("certificate does not start from this graph")
        return ComparisonInstance(g, base.space, tuple(lifted))
    if len(component) != cls.certificate.source.n:
        raise WitnessError("component size does not match the certificate")
    labeling = [0] * g.n
    for i, v in enumerate(component):
        labeling[v] = lifted[i]
    return ComparisonInstance(g, base.space, tuple(labeling))


def find_violation(g: Graph) -> ComparisonInstance | None:
    """Violating instance for the first nontrivial component, or None when ``g`` is trivial."""
    for comp in classify(g):
        if isinstance(comp.result, Nontrivial):
            return violating_instance(g, comp.result, comp.vertices)
    return None
