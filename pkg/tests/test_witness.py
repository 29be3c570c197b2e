import itertools

import pytest

from graphcmp.classifier import Nontrivial, classify, classify_connected
from graphcmp.feasibility import Infeasible, check_comparison
from graphcmp.fusion import FusionCertificate, FusionStep, replay
from graphcmp.graph import C4, T3, complete_graph, cycle_graph, disjoint_union, fan_graph, path_graph
from graphcmp.metric import cycle_metric, star_metric, validate_metric
from graphcmp.witness import WitnessError, canonical_violation, find_violation, violating_instance


def test_canonical_violations():
    c4, t3 = canonical_violation("C4"), canonical_violation("T3")
    assert c4.graph == C4 and c4.space == cycle_metric(4) and c4.labeling == (0, 1, 2, 3)
    assert t3.graph == T3 and t3.space == star_metric(3, 1.0)
    assert t3.graph.degree(0) == 3 and t3.labeling[0] == 0
    for inst in (c4, t3):
        assert validate_metric(inst.space.d) == []
        assert isinstance(check_comparison(inst), Infeasible)
    with pytest.raises(WitnessError):
        canonical_violation("K4")


def test_c5_witness():
    g = cycle_graph(5)
    inst = violating_instance(g, classify_connected(g))
    assert inst.graph == g and inst.space == cycle_metric(4)
    assert len(set(inst.labeling)) == 4
    assert isinstance(check_comparison(inst), Infeasible)


def test_c4_witness_is_canonical():
    assert violating_instance(C4, classify_connected(C4)) == canonical_violation("C4")


def test_fan_witness():
    g = fan_graph()
    cls = classify_connected(g)
    assert cls.target == "T3" and len(cls.certificate.steps) == 1
    assert isinstance(check_comparison(violating_instance(g, cls)), Infeasible)


def test_lifted_labels_follow_fused_classes():
    g = fan_graph()
    cls = classify_connected(g)
    inst = violating_instance(g, cls)
    _, vmap = replay(g, cls.certificate.steps)
    for u, v in itertools.combinations(range(g.n), 2):
        assert (vmap[u] == vmap[v]) == (inst.labeling[u] == inst.labeling[v])


def test_bad_certificate_is_rejected():
    bogus = Nontrivial("C4", FusionCertificate(cycle_graph(5), (FusionStep(0, 1, {2: True}),), C4))
    with pytest.raises(WitnessError):
        violating_instance(cycle_graph(5), bogus)
    with pytest.raises(WitnessError):
        violating_instance(cycle_graph(6), classify_connected(cycle_graph(5)))


def test_find_violation_on_disconnected_graph():
    g = disjoint_union(path_graph(2), cycle_graph(5))
    inst = find_violation(g)
    assert inst.graph == g and inst.labeling[:2] == (0, 0)
    assert isinstance(check_comparison(inst), Infeasible)
    assert find_violation(complete_graph(4)) is None
    comp = classify(g)[1]
    assert violating_instance(g, comp.result, comp.vertices) == inst
