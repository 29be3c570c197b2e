import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from graphcmp.classifier import (
    FAN,
    GEODESIC_SPIDER,
    INDUCED_CYCLE,
    PATTERN_11211,
    PATTERN_1221,
    PATTERN_222,
    RECIPES,
    ClassificationError,
    FiveArray,
    Nontrivial,
    Trivial,
    canonical_five_array,
    check_proposition,
    check_star_inequality,
    classify,
    classify_connected,
    find_obstruction,
    five_array_from,
    graph_from_five_array,
    is_trivial,
    obstruction_certificate,
)
from graphcmp.fusion import FusionCertificate, fusion_reachable, replay, verify_certificate
from graphcmp.graph import (
    C4,
    T3,
    Graph,
    canonical_form,
    complete_graph,
    cycle_graph,
    disjoint_union,
    enumerate_connected_graphs,
    fan_graph,
    induced_subgraph,
    isomorphic,
    multipath_graph,
    path_graph,
    recognize_multipath,
    relabel,
    sequence_of,
)

from conftest import graphs


def five_arrays(max_n):
    for l in range(max_n):
        for m1, m2 in itertools.product(range(max_n), repeat=2):
            if l + 1 + m1 + m2 > max_n:
                continue
            for k1 in range(1, m1 + 1) if m1 else [0]:
                for k2 in range(1, m2 + 1) if m2 else [0]:
                    yield FiveArray(m1, k1, l, k2, m2)


def oracle_trivial(g):
    return g.n < 4 or (fusion_reachable(g, C4) is None and fusion_reachable(g, T3) is None)


def test_five_array_validation():
    with pytest.raises(ClassificationError):
        FiveArray(2, 3, 0, 0, 0)
    with pytest.raises(ClassificationError):
        FiveArray(2, 0, 0, 0, 0)
    with pytest.raises(ClassificationError):
        FiveArray(0, 0, -1, 0, 0)


@pytest.mark.parametrize(
    "seq, arr",
    [
        ((1, 1, 1, 1), (0, 0, 3, 0, 0)),
        ((2, 1, 1, 1, 2), (3, 1, 0, 1, 3)),
        ((4,), (3, 3, 0, 0, 0)),
        ((2, 1, 2), (2, 2, 0, 2, 2)),
        ((1, 2, 3), (0, 0, 0, 2, 5)),
    ],
)
def test_five_array_from_examples(seq, arr):
    assert five_array_from(seq).as_tuple() == arr


def test_graph_from_five_array_examples():
    assert isomorphic(graph_from_five_array(FiveArray(0, 0, 3, 0, 0)), path_graph(4))
    assert isomorphic(graph_from_five_array(FiveArray(3, 3, 0, 0, 0)), complete_graph(4))
    g = graph_from_five_array(FiveArray(2, 1, 1, 1, 2))
    (comp,) = classify(g)
    assert isinstance(comp.result, Trivial)
    assert comp.result.five == canonical_five_array(FiveArray(2, 1, 1, 1, 2))


def test_five_array_canonical_oracle_n8():
    # two arrays describe isomorphic graphs exactly when their canonical arrays agree
    by_form = {}
    for f in five_arrays(8):
        g = graph_from_five_array(f)
        canon = canonical_five_array(f)
        assert isomorphic(graph_from_five_array(canon), g)
        assert canonical_five_array(canon) == canon
        by_form.setdefault(canonical_form(g), set()).add(canon)
    assert all(len(s) == 1 for s in by_form.values())


@pytest.mark.parametrize(
    "seq, case",
    [((1, 2, 2, 1), "b"), ((2, 2, 2), "c"), ((3, 3), None), ((1, 1, 2, 1, 1), "a"), ((2, 1, 1, 1, 2), None)],
)
def test_check_proposition(seq, case):
    v = check_proposition(seq)
    assert (v.case if v else None) == case


def test_star_inequality_examples():
    p = path_graph(7)
    assert check_star_inequality(p, 0, 3, 6).holds
    c6 = cycle_graph(6)
    chk = check_star_inequality(c6, 0, 2, 4)
    assert not chk.holds and chk.distances == (2, 2, 2)
    assert check_star_inequality(C4, 0, 1, 2).holds


def test_classify_examples():
    (c4,) = classify(C4)
    assert isinstance(c4.result, Nontrivial) and c4.result.target == "C4"
    assert c4.result.certificate.steps == ()
    assert isinstance(classify_connected(multipath_graph((1, 1, 2, 1, 1))), Nontrivial)
    g = multipath_graph((2, 1, 1, 1, 2))
    assert classify_connected(g).five.as_tuple() == (3, 1, 0, 1, 3)
    assert classify_connected(complete_graph(4)).five.as_tuple() == (3, 3, 0, 0, 0)


def test_classify_disconnected_gives_one_entry_per_component():
    g = disjoint_union(C4, complete_graph(3), path_graph(2))
    comps = classify(g)
    assert [len(c.vertices) for c in comps] == [4, 3, 2]
    assert [c.result.verdict for c in comps] == ["nontrivial", "trivial", "trivial"]
    assert not is_trivial(g)


def test_find_obstruction_examples():
    o = find_obstruction(cycle_graph(5))
    assert o.kind == INDUCED_CYCLE and len(o.vertices) == 5
    subdivided = Graph.from_edges(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
    o = find_obstruction(subdivided)
    assert o.kind == GEODESIC_SPIDER and 0 in o.vertices
    assert find_obstruction(multipath_graph((2, 2, 2))).kind == PATTERN_222
    assert find_obstruction(multipath_graph((1, 1, 2, 1, 1))).kind == PATTERN_11211
    assert find_obstruction(multipath_graph((1, 2, 2, 1))).kind == PATTERN_1221
    assert find_obstruction(fan_graph()).kind == FAN


@pytest.mark.parametrize(
    "g, target, steps",
    [(cycle_graph(5), "C4", 1), (fan_graph(), "T3", 1), (multipath_graph((2, 2, 2)), "C4", 2)],
)
def test_obstruction_certificate_examples(g, target, steps):
    name, cert = obstruction_certificate(g, find_obstruction(g))
    assert name == target and len(cert.steps) == steps and verify_certificate(cert)


def test_frozen_recipes_replay():
    for kind, (source, target, steps) in RECIPES.items():
        final, _ = replay(source, steps)
        assert isomorphic(final, {"C4": C4, "T3": T3}[target]), kind


@pytest.mark.parametrize("n", range(1, 6))
def test_classifier_matches_fusion_oracle(n):
    for g in enumerate_connected_graphs(n):
        assert isinstance(classify_connected(g), Trivial) == oracle_trivial(g)


@pytest.mark.parametrize("n", range(4, 8))
def test_certificates_and_obstructions_exhaustive(n):
    for g in enumerate_connected_graphs(n):
        cls = classify_connected(g)
        obstruction = find_obstruction(g)
        assert (obstruction is None) == isinstance(cls, Trivial)
        if isinstance(cls, Nontrivial):
            cert = cls.certificate
            assert cert.source == g and verify_certificate(cert)
            assert isomorphic(cert.target, {"C4": C4, "T3": T3}[cls.target])


@pytest.mark.parametrize("n", range(5, 8))
def test_trivial_graphs_have_no_induced_fan(n):
    fan = fan_graph()
    for g in enumerate_connected_graphs(n):
        if isinstance(classify_connected(g), Trivial):
            for sub in itertools.combinations(range(n), 5):
                assert not isomorphic(induced_subgraph(g, sub)[0], fan)


@given(graphs(min_n=1, max_n=8, connected=True), st.randoms(use_true_random=False))
def test_classification_is_relabeling_invariant(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    a, b = classify_connected(g), classify_connected(relabel(g, perm))
    assert a.verdict == b.verdict
    if isinstance(a, Trivial):
        assert a.five == b.five
    else:
        assert verify_certificate(b.certificate)


@given(graphs(min_n=1, max_n=9, connected=True))
def test_trivial_verdict_matches_level_sequence(g):
    cls = classify_connected(g)
    levels = recognize_multipath(g)
    if isinstance(cls, Trivial):
        assert isomorphic(graph_from_five_array(cls.five), g)
        assert cls.sequence == sequence_of(g, levels)
    else:
        assert isinstance(cls.certificate, FusionCertificate) and verify_certificate(cls.certificate)
