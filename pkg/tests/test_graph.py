import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from graphcmp.graph import (
    C4,
    T3,
    Graph,
    GraphError,
    NotConnectedError,
    NotMultipath,
    canonical_form,
    complete_graph,
    connected_components,
    cycle_graph,
    disjoint_union,
    empty_graph,
    enumerate_connected_graphs,
    fan_graph,
    find_isomorphism,
    induced_subgraph,
    is_level_function,
    isomorphic,
    multipath_graph,
    path_graph,
    path_metric,
    recognize_multipath,
    relabel,
    sequence_of,
)

from conftest import brute_canonical, graphs


def test_graph_rejects_loops_and_out_of_range():
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 3)])


def test_path_metric_examples():
    d = path_metric(C4)
    assert [d[0][1], d[1][2], d[2][3], d[3][0]] == [1, 1, 1, 1]
    assert d[0][2] == d[1][3] == 2
    k3 = path_metric(complete_graph(3))
    assert all(k3[i][j] == 1 for i in range(3) for j in range(3) if i != j)
    assert path_metric(path_graph(4))[0][3] == 3


def test_connected_components_examples():
    sizes = sorted(len(c) for c in connected_components(disjoint_union(complete_graph(3), complete_graph(2))))
    assert sizes == [2, 3]
    assert len(connected_components(cycle_graph(5))) == 1
    assert connected_components(empty_graph(3)) == [[0], [1], [2]]


def test_induced_subgraph_examples():
    sub, keep = induced_subgraph(cycle_graph(5), [0, 1, 2, 3])
    assert isomorphic(sub, path_graph(4)) and keep == [0, 1, 2, 3]
    rim, _ = induced_subgraph(fan_graph(), [1, 2, 3, 4])
    assert isomorphic(rim, path_graph(4))
    whole, _ = induced_subgraph(C4, range(4))
    assert whole == C4


def test_recognize_multipath_examples():
    assert recognize_multipath(complete_graph(4)) == (0, 0, 0, 0)
    levels = recognize_multipath(path_graph(4))
    assert levels in ((0, 1, 2, 3), (3, 2, 1, 0))
    assert isinstance(recognize_multipath(C4), NotMultipath)
    with pytest.raises(NotConnectedError):
        recognize_multipath(empty_graph(2))


def test_c4_has_no_level_function_exhaustive():
    assert not any(is_level_function(C4, lv) for lv in itertools.product(range(4), repeat=4))


def test_sequence_of_examples():
    assert sequence_of(path_graph(4), recognize_multipath(path_graph(4))) == (1, 1, 1, 1)
    assert sequence_of(complete_graph(4), (0, 0, 0, 0)) == (4,)
    g = multipath_graph((1, 1, 2, 1, 1))
    assert sequence_of(g, recognize_multipath(g)) in ((1, 1, 2, 1, 1),)


@given(st.lists(st.integers(1, 3), min_size=1, max_size=5))
def test_multipath_graph_round_trip(counts):
    g = multipath_graph(counts)
    levels = recognize_multipath(g)
    assert not isinstance(levels, NotMultipath)
    seq = sequence_of(g, levels)
    if len(counts) <= 2:
        # complete graph: a single level is just as valid
        assert sum(seq) == sum(counts)
    else:
        assert seq in (tuple(counts), tuple(counts[::-1]))


@given(graphs(max_n=5, connected=True))
def test_recognize_multipath_agrees_with_exhaustive_search(g):
    levels = recognize_multipath(g)
    if isinstance(levels, NotMultipath):
        assert not any(is_level_function(g, lv) for lv in itertools.product(range(g.n), repeat=g.n))
    else:
        assert is_level_function(g, levels)


def test_isomorphic_examples():
    assert isomorphic(C4, relabel(C4, [2, 0, 3, 1]))
    assert not isomorphic(C4, path_graph(4))
    assert not isomorphic(T3, disjoint_union(complete_graph(3), empty_graph(1)))


def test_canonical_form_examples():
    assert canonical_form(complete_graph(2)) == "1"
    assert canonical_form(empty_graph(2)) == "0"
    assert canonical_form(cycle_graph(5)) == canonical_form(relabel(cycle_graph(5), [3, 1, 4, 0, 2]))


@given(graphs(max_n=6))
def test_canonical_form_matches_brute_force(g):
    assert canonical_form(g) == brute_canonical(g)


@given(graphs(max_n=8), st.randoms(use_true_random=False))
def test_canonical_form_is_relabeling_invariant(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = relabel(g, perm)
    assert canonical_form(g) == canonical_form(h)
    phi = find_isomorphism(g, h)
    assert phi is not None
    assert all(g.adjacent(u, v) == h.adjacent(phi[u], phi[v]) for u in range(g.n) for v in range(g.n) if u != v)


@pytest.mark.parametrize("n, count", [(1, 1), (2, 1), (3, 2), (4, 6), (5, 21), (6, 112)])
def test_enumerate_connected_counts(n, count):
    gs = list(enumerate_connected_graphs(n))
    assert len(gs) == count
    assert len({canonical_form(g) for g in gs}) == count


def test_enumeration_matches_brute_force_n4():
    pairs = list(itertools.combinations(range(4), 2))
    forms = set()
    for bits in itertools.product([0, 1], repeat=len(pairs)):
        g = Graph.from_edges(4, [p for p, b in zip(pairs, bits) if b])
        if len(connected_components(g)) == 1:
            forms.add(brute_canonical(g))
    assert forms == {canonical_form(g) for g in enumerate_connected_graphs(4)}
