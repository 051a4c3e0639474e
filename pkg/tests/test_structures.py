import itertools

import networkx as nx
import pytest

from fospectra.logic import Vocabulary, VocabularyError
from fospectra.structures import (
    FiniteStructure, FormatError, Graph, StructureError, cycle_structure, deserialize,
    disjoint_union, edge_coloring, find_isomorphism, gaifman_graph, graph_to_structure,
    isomorphic, max_degree, path_structure, random_structure, serialize,
)

VOC = Vocabulary(("P", "Q"), ("f", "g"), ("c",))


def test_rejects_non_injective():
    with pytest.raises(StructureError, match="not injective"):
        FiniteStructure(3, Vocabulary((), ("f",), ()), {}, {"f": {1: 3, 2: 3}}, {})


def test_rejects_out_of_range_and_unknown_symbols():
    with pytest.raises(StructureError):
        FiniteStructure(2, Vocabulary(("P",), (), ()), {"P": {3}}, {}, {})
    with pytest.raises(VocabularyError):
        FiniteStructure(2, Vocabulary((), (), ()), {"P": {1}}, {}, {})
    with pytest.raises(StructureError):
        FiniteStructure(2, Vocabulary((), (), ("c",)), {}, {}, {})


def test_serialize_roundtrip(rng):
    for _ in range(50):
        s = random_structure(VOC, rng.randint(1, 9), rng)
        text = serialize(s)
        assert deserialize(text) == s
        assert serialize(deserialize(text)) == text


def test_format_errors():
    with pytest.raises(FormatError, match="line 1"):
        deserialize("structur N=3\n")
    with pytest.raises(FormatError, match="line 2"):
        deserialize("structure N=3\npif f: 1->2 2->2 3->2\n")
    with pytest.raises(FormatError):
        deserialize("structure N=3\nbogus line\n")


def test_gaifman_graph_ignores_loops_and_merges_parallel_edges():
    s = FiniteStructure(3, Vocabulary((), ("f", "g"), ()), {},
                        {"f": {1: 2, 3: 3}, "g": {2: 1}}, {})
    g = gaifman_graph(s)
    assert g.edges == frozenset({(1, 2)})
    assert max_degree(s) == 1


def test_isomorphism(rng):
    for _ in range(40):
        s = random_structure(VOC, rng.randint(1, 7), rng)
        perm = list(s.elements)
        rng.shuffle(perm)
        t = s.relabel({a: b for a, b in zip(s.elements, perm)})
        m = find_isomorphism(s, t)
        assert m is not None and s.relabel(m) == t
    c6 = cycle_structure(6)
    assert isomorphic(c6, c6.relabel({i: (i % 6) + 1 for i in range(1, 7)}))
    assert not isomorphic(disjoint_union(cycle_structure(3), cycle_structure(3)), c6)
    assert not isomorphic(path_structure(6), c6)


def test_edge_coloring_is_proper():
    for g in (nx.petersen_graph(), nx.complete_graph(5), nx.hypercube_graph(3)):
        gr = Graph.from_networkx(nx.convert_node_labels_to_integers(g, 1))
        col = edge_coloring(gr)
        d = max_degree(gr)
        assert max(col.values()) + 1 <= 2 * d - 1
        for (e1, c1), (e2, c2) in itertools.combinations(col.items(), 2):
            if set(e1) & set(e2):
                assert c1 != c2
        s = graph_to_structure(gr)
        assert gaifman_graph(s) == gr


def test_graph_to_structure_rejects_too_few_colors():
    g = Graph.from_networkx(nx.convert_node_labels_to_integers(nx.complete_graph(4), 1))
    with pytest.raises(StructureError):
        graph_to_structure(g, ncolors=2)


def test_induced_and_delete():
    s = FiniteStructure(4, VOC, {"P": {1, 4}}, {"f": {1: 2, 2: 3, 3: 4}}, {"c": 2})
    sub, new = s.induced([2, 3, 4], keep_constants=True)
    assert sub.size == 3 and sub.pif["f"] == {1: 2, 2: 3} and sub.constants == {"c": 1}
    with pytest.raises(StructureError):
        s.induced([3, 4], keep_constants=True)
    assert s.delete_element(1).unary["P"] == {3}
