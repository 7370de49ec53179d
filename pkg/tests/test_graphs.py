import numpy as np
import pytest

from qpt.bcs import bcs_graph, homogenise, magic_square_system
from qpt.errors import GroupOrderCapExceeded, InputError, ParseError
from qpt.graphs import (
    ClassicalGraph,
    are_isomorphic,
    automorphism_group,
    canonical_form,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    graph_from_json,
    parse_graph,
    path_graph,
    petersen_graph,
    rook_graph,
    serialize_graph,
)


@pytest.mark.parametrize(
    "g,order",
    [
        (cycle_graph(5), 10),
        (cycle_graph(8), 16),
        (petersen_graph(), 120),
        (rook_graph(3), 72),
        (complete_graph(5), 120),
        (complete_bipartite_graph(3, 3), 72),
        (ClassicalGraph(1, ()), 1),
        (ClassicalGraph(4, ()), 24),
        (path_graph(4), 2),
    ],
)
def test_automorphism_group_order(g, order):
    G = automorphism_group(g)
    assert G.order == order
    for p in G.elements:
        assert g.is_automorphism(p)


def test_automorphism_cap_keeps_order():
    G = automorphism_group(ClassicalGraph(8, ()), max_order=100)
    assert G.order == 40320
    assert not G.has_elements
    with pytest.raises(GroupOrderCapExceeded):
        G.elements


def test_parse_examples():
    k3 = parse_graph('{"n":3,"edges":[[0,1],[1,2],[0,2]]}')
    assert k3 == complete_graph(3)
    with pytest.raises(ParseError):
        parse_graph('{"n":3,"edges":[[0,0]]}')
    for bad in ['{"n":3,"edges":[[0,3]]}', '{"n":3,"edges":[[0,1],[1,0]]}', '{"edges":[]}', "[1,", '{"n":-1}']:
        with pytest.raises(ParseError):
            parse_graph(bad)
    g = petersen_graph()
    assert parse_graph(serialize_graph(g)) == g


def test_parse_error_is_input_error():
    assert issubclass(ParseError, InputError)


def test_isomorphism_examples():
    g = petersen_graph()
    assert are_isomorphic(g, g) is not None
    assert are_isomorphic(cycle_graph(6), cycle_graph(5)) is None
    hom = bcs_graph(homogenise(magic_square_system())).graph
    inhom = bcs_graph(magic_square_system()).graph
    assert hom.n == inhom.n == 24
    assert are_isomorphic(hom, inhom) is None


def test_isomorphism_symmetric_on_relabelled_graphs():
    rng = np.random.default_rng(7)
    for g in [petersen_graph(), rook_graph(3), cycle_graph(9)]:
        perm = rng.permutation(g.n)
        h = g.relabel(perm)
        f = are_isomorphic(g, h)
        b = are_isomorphic(h, g)
        assert f is not None and b is not None
        assert h == g.relabel(f) and g == h.relabel(b)


def test_canonical_form_invariant():
    rng = np.random.default_rng(11)
    g = rook_graph(3)
    c1, _ = canonical_form(g)
    c2, _ = canonical_form(g.relabel(rng.permutation(g.n)))
    assert c1 == c2
    assert canonical_form(cycle_graph(6))[0] != canonical_form(ClassicalGraph(6, ((0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3))))[0]


def test_rejects_loops_and_asymmetric_adjacency():
    with pytest.raises(InputError):
        ClassicalGraph(2, ((0, 0),))
    with pytest.raises(InputError):
        ClassicalGraph.from_adjacency(np.array([[0, 1], [0, 0]]))
    assert graph_from_json({"n": 2, "edges": [[0, 1]]}).num_edges == 1
