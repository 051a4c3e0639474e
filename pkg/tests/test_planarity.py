import networkx as nx
import pytest

from fospectra.generators import fibonacci_structure, powers_structure, spiral
from fospectra.planarity import (
    count_faces, has_kuratowski_subdivision, planarity, verify_embedding, verify_kuratowski,
)
from fospectra.structures import Graph, graph_to_structure


def _g(nxg):
    return Graph.from_networkx(nx.convert_node_labels_to_integers(nxg, 1))


@pytest.mark.parametrize("nxg", [nx.complete_graph(5), nx.complete_bipartite_graph(3, 3),
                                 nx.petersen_graph()])
def test_nonplanar_with_certificate(nxg):
    g = _g(nxg)
    res = planarity(g)
    assert not res.planar and verify_kuratowski(g, res.kuratowski)
    assert has_kuratowski_subdivision(g)


def test_planar_embedding_satisfies_euler():
    g = _g(nx.icosahedral_graph())
    res = planarity(g)
    assert res.planar and verify_embedding(g, res.rotation)
    assert count_faces(res.rotation) == 2 - g.n + len(g.edges)


def test_agrees_with_brute_force(rng):
    for _ in range(60):
        n = rng.randint(5, 8)
        g = _g(nx.gnm_random_graph(n, rng.randint(n, 3 * n - 3), seed=rng.randrange(10**6)))
        assert planarity(g).planar == (not has_kuratowski_subdivision(g))


def test_bad_embedding_rejected():
    g = _g(nx.cycle_graph(4))
    rot = planarity(g).rotation
    rot[1] = list(reversed(rot[1])) + [3]
    assert not verify_embedding(g, rot)


@pytest.mark.parametrize("n", [2, 3, 17, 64])
def test_families_planar(n):
    for s in (spiral(n), powers_structure(n), fibonacci_structure(n, True)):
        assert planarity(s).planar


def test_structure_input():
    g = _g(nx.complete_graph(5))
    assert not planarity(graph_to_structure(g)).planar
