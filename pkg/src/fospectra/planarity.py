"""Planarity testing with checkable certificates.

The test itself is delegated to networkx (left-right planarity algorithm).
A positive answer comes with a rotation system that :func:`verify_embedding`
checks by counting faces against Euler's formula; a negative answer comes
with a Kuratowski subgraph that :func:`verify_kuratowski` checks directly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import networkx as nx

from .structures import FiniteStructure, Graph, gaifman_graph


@dataclass(frozen=True)
class PlanarityResult:
    planar: bool
    # vertex -> neighbours in clockwise order (planar case)
    rotation: dict = field(default_factory=dict)
    # edges of a K5 / K3,3 subdivision (non-planar case)
    kuratowski: tuple = ()

    def __bool__(self):
        return self.planar


def _as_graph(g) -> Graph:
    return gaifman_graph(g) if isinstance(g, FiniteStructure) else g


def planarity(g: Graph | FiniteStructure, certify: bool = True) -> PlanarityResult:
    g = _as_graph(g)
    ok, cert = nx.check_planarity(g.to_networkx(), counterexample=certify)
    if ok:
        rot = {v: list(cert.neighbors_cw_order(v)) for v in cert.nodes}
        res = PlanarityResult(True, rotation=rot)
        if certify and not verify_embedding(g, rot):
            raise AssertionError("planarity certificate failed verification")
        return res
    kur = tuple(sorted((min(u, v), max(u, v)) for u, v in cert.edges())) if certify else ()
    res = PlanarityResult(False, kuratowski=kur)
    if certify and not verify_kuratowski(g, kur):
        raise AssertionError("non-planarity certificate failed verification")
    return res


def is_planar(g: Graph | FiniteStructure) -> bool:
    return planarity(g).planar


def count_faces(rotation: dict) -> int:
    """Number of faces of the embedding given by a rotation system."""
    seen = set()
    faces = 0
    pos = {v: {w: i for i, w in enumerate(nbrs)} for v, nbrs in rotation.items()}
    for u, nbrs in rotation.items():
        for v in nbrs:
            if (u, v) in seen:
                continue
            faces += 1
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                # next dart: at b, turn to the neighbour after a in clockwise order
                rb = rotation[b]
                c = rb[(pos[b][a] + 1) % len(rb)]
                a, b = b, c
    return faces


def verify_embedding(g: Graph, rotation: dict) -> bool:
    """Check that ``rotation`` lists each vertex's neighbours exactly and that
    every connected component satisfies ``V - E + F = 2``."""
    adj = g.adjacency
    for v in range(1, g.n + 1):
        if sorted(rotation.get(v, [])) != sorted(adj[v]):
            return False
    comps = list(nx.connected_components(g.to_networkx()))
    faces = 0
    for comp in comps:
        sub = {v: rotation[v] for v in comp}
        f = count_faces(sub)
        e = sum(len(rotation[v]) for v in comp) // 2
        # an isolated vertex has one (outer) face and no darts
        if e == 0:
            f = 1
        if len(comp) - e + f != 2:
            return False
        faces += f
    return True


def verify_kuratowski(g: Graph, edges) -> bool:
    """``edges`` must be a subgraph of ``g`` homeomorphic to K5 or K3,3."""
    if not all((u, v) in g.edges for u, v in edges):
        return False
    h = nx.Graph(list(edges))
    # suppress degree-2 vertices
    while True:
        v = next((v for v in h if h.degree(v) == 2), None)
        if v is None:
            break
        a, b = list(h.neighbors(v))
        if h.has_edge(a, b):
            return False
        h.remove_node(v)
        h.add_edge(a, b)
    degs = sorted(d for _, d in h.degree())
    if degs == [4] * 5 and h.number_of_edges() == 10:
        return True
    if degs == [3] * 6 and h.number_of_edges() == 9:
        return nx.is_bipartite(h) and all(
            len(side) == 3 for side in nx.bipartite.sets(h))
    return False


# --- brute-force oracle ---------------------------------------------------------

def _paths(adj, u, v, blocked):
    """All simple u-v paths whose interior avoids ``blocked``."""
    stack = [(u, [u])]
    while stack:
        x, path = stack.pop()
        for y in adj[x]:
            if y == v:
                yield path + [v]
            elif y not in blocked and y not in path:
                stack.append((y, path + [y]))


def _disjoint_paths(adj, pairs, used) -> bool:
    if not pairs:
        return True
    (u, v), rest = pairs[0], pairs[1:]
    for p in _paths(adj, u, v, used):
        inner = set(p[1:-1])
        if _disjoint_paths(adj, rest, used | inner):
            return True
    return False


def has_kuratowski_subdivision(g: Graph) -> bool:
    """Exhaustive search for a subdivision of K5 or K3,3 (small graphs only)."""
    adj = g.adjacency
    verts = list(range(1, g.n + 1))
    big = [v for v in verts if len(adj[v]) >= 4]
    for branch in itertools.combinations(big, 5):
        pairs = list(itertools.combinations(branch, 2))
        if _disjoint_paths(adj, pairs, set(branch)):
            return True
    mid = [v for v in verts if len(adj[v]) >= 3]
    for six in itertools.combinations(mid, 6):
        first = six[0]
        for others in itertools.combinations(six[1:], 2):
            left = (first,) + others
            right = tuple(v for v in six if v not in left)
            pairs = [(a, b) for a in left for b in right]
            if _disjoint_paths(adj, pairs, set(six)):
                return True
    return False
