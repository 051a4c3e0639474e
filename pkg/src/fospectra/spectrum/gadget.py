"""Degree-3 coloured graphs from PIF structures.

Element ``a`` of a structure with PIFs ``f_1..f_d`` becomes a path of ``2d``
vertices ``p_1(a)..p_d(a), q_1(a)..q_d(a)`` (block ``a`` of the vertex
numbering); ``f_i(a) = b`` becomes the edge ``p_i(a) - q_i(b)``.  Vertex
colours: ``P<i>`` on ``p_i`` and ``q_i``, ``Q`` on the ``q`` vertices and
``Loop`` on ``p_i(a)`` when ``f_i(a) = a``, since that edge may coincide with a
path edge.  A unary relation ``r`` of the structure colours every vertex of
the gadgets of its members.  ``l`` isolated, uncoloured vertices are
appended.

With ``planar_order`` each path lists its ports in the clockwise order of the
matching edges in a planar embedding of the structure, so the output is
planar whenever the input is.
"""

from __future__ import annotations

from ..logic.syntax import Vocabulary
from ..planarity import planarity
from ..structures import ColoredGraph, FiniteStructure, Graph, StructureError

Q, LOOP = "Q", "Loop"


def gadget_vocabulary(d: int) -> tuple[str, ...]:
    return tuple(f"P{i}" for i in range(1, d + 1)) + (Q, LOOP)


def _vertex(a: int, port: tuple, d: int) -> int:
    side, i = port  # side 0 for p_i, 1 for q_i; i is 0-based
    return 2 * d * (a - 1) + side * d + i + 1


def _default_order(d: int) -> list[tuple]:
    return [(0, i) for i in range(d)] + [(1, i) for i in range(d)]


def _planar_orders(s: FiniteStructure) -> dict:
    res = planarity(s)
    if not res.planar:
        raise StructureError("planar_order needs a planar structure")
    pifs = s.vocab.pifs
    d = len(pifs)
    orders = {}
    for a in s.elements:
        ports = []
        for b in res.rotation.get(a, ()):
            # edges between a and b: our ports, sorted so that the two ends of
            # the parallel bundle see it in opposite orders
            here = []
            for i, f in enumerate(pifs):
                if s.pif[f].get(a) == b:
                    here.append(((i, 0) if a < b else (i, 1), (0, i)))
                if s.pif[f].get(b) == a:
                    here.append(((i, 1) if a < b else (i, 0), (1, i)))
            here.sort(reverse=a > b)
            ports.extend(p for _, p in here)
        rest = [p for p in _default_order(d) if p not in ports]
        # loop ports stay adjacent so their chords nest trivially
        loops = [i for i, f in enumerate(pifs) if s.pif[f].get(a) == a]
        tail = [p for i in loops for p in ((0, i), (1, i))]
        rest = [p for p in rest if p not in tail]
        orders[a] = ports + tail + rest
    return orders


def pif_to_degree3(s: FiniteStructure, l: int = 0, planar_order: bool = False) -> ColoredGraph:
    if l < 0:
        raise ValueError("l must be non-negative")
    pifs = s.vocab.pifs
    d = len(pifs)
    if d == 0:
        raise StructureError("structure has no PIF symbols")
    if s.vocab.constants:
        raise StructureError("gadget transform takes structures without constants")
    clash = set(s.vocab.unary) & set(gadget_vocabulary(d))
    if clash:
        raise StructureError(f"unary symbols {sorted(clash)} clash with gadget colours")
    orders = _planar_orders(s) if planar_order else {a: _default_order(d) for a in s.elements}
    edges = set()
    labels = {name: set() for name in gadget_vocabulary(d) + s.vocab.unary}
    for a in s.elements:
        path = [_vertex(a, p, d) for p in orders[a]]
        edges.update(zip(path, path[1:]))
        for side in (0, 1):
            for i in range(d):
                v = _vertex(a, (side, i), d)
                labels[f"P{i + 1}"].add(v)
                if side:
                    labels[Q].add(v)
                for r in s.vocab.unary:
                    if a in s.unary[r]:
                        labels[r].add(v)
    for i, f in enumerate(pifs):
        for a, b in s.pif[f].items():
            edges.add((_vertex(a, (0, i), d), _vertex(b, (1, i), d)))
            if a == b:
                labels[LOOP].add(_vertex(a, (0, i), d))
    return ColoredGraph(Graph(2 * d * s.size + l, frozenset(edges)), labels)


def decode_degree3(g: ColoredGraph, pifs, unary=()) -> FiniteStructure:
    """Invert :func:`pif_to_degree3` given the PIF names in order and the
    unary relation names."""
    pifs, unary = tuple(pifs), tuple(unary)
    d = len(pifs)
    n = sum(1 for v in range(1, g.n + 1) if any(v in g.labels[f"P{i}"] for i in range(1, d + 1)))
    if n % (2 * d):
        raise StructureError("gadget vertex count is not a multiple of 2d")
    n //= 2 * d

    def port(v):
        return (v - 1) // (2 * d) + 1, (1 if v in g.labels[Q] else 0), next(
            i for i in range(d) if v in g.labels[f"P{i + 1}"])

    pif = {f: {} for f in pifs}
    for u, v in g.graph.edges:
        (a, su, iu), (b, sv, iv) = port(u), port(v)
        if a == b or iu != iv or su == sv:
            continue
        if su == 1:
            a, b = b, a
        pif[pifs[iu]][a] = b
    for v in g.labels[LOOP]:
        a, _, i = port(v)
        pif[pifs[i]][a] = a
    rels = {r: {(v - 1) // (2 * d) + 1 for v in g.labels.get(r, ())} for r in unary}
    return FiniteStructure(n, Vocabulary(unary, pifs, ()), rels, pif, {})
