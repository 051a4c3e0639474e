"""Finite structures over PIF vocabularies and their Gaifman graphs."""

from __future__ import annotations

import random
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

from .logic.syntax import Vocabulary, VocabularyError


class StructureError(ValueError):
    """An interpretation violates the structure invariants."""


@dataclass(frozen=True, eq=True)
class FiniteStructure:
    """A structure with universe ``{1..size}``.

    ``pif[f]`` is a dict from elements to elements and must be injective.
    Symbols of the vocabulary with no entry get the empty interpretation.
    Treat instances as immutable: the arrays used by the evaluator are cached.
    """

    size: int
    vocab: Vocabulary
    unary: Mapping[str, frozenset] = field(default_factory=dict)
    pif: Mapping[str, Mapping[int, int]] = field(default_factory=dict)
    constants: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        n = self.size
        if not isinstance(n, int) or n < 1:
            raise StructureError(f"universe size must be a positive integer, got {n!r}")
        v = self.vocab
        for kind, given, names in (("unary", self.unary, v.unary), ("pif", self.pif, v.pifs),
                                   ("constant", self.constants, v.constants)):
            extra = set(given) - set(names)
            if extra:
                raise VocabularyError(f"{kind} symbol(s) {sorted(extra)} not in vocabulary")
        unary = {}
        for r in v.unary:
            s = frozenset(int(x) for x in self.unary.get(r, ()))
            bad = [x for x in s if not 1 <= x <= n]
            if bad:
                raise StructureError(f"unary {r}: element {min(bad)} outside 1..{n}")
            unary[r] = s
        pifs = {}
        for f in v.pifs:
            m = {int(a): int(b) for a, b in dict(self.pif.get(f, {})).items()}
            for a, b in m.items():
                if not (1 <= a <= n and 1 <= b <= n):
                    raise StructureError(f"pif {f}: {a}->{b} outside 1..{n}")
            if len(set(m.values())) != len(m):
                seen = {}
                for a in sorted(m):
                    b = m[a]
                    if b in seen:
                        raise StructureError(
                            f"pif {f} is not injective: {seen[b]}->{b} and {a}->{b}")
                    seen[b] = a
            pifs[f] = dict(sorted(m.items()))
        consts = {}
        for c in v.constants:
            if c not in self.constants:
                raise StructureError(f"constant {c} has no value")
            x = int(self.constants[c])
            if not 1 <= x <= n:
                raise StructureError(f"constant {c}={x} outside 1..{n}")
            consts[c] = x
        object.__setattr__(self, "unary", unary)
        object.__setattr__(self, "pif", pifs)
        object.__setattr__(self, "constants", consts)

    def __hash__(self):
        return hash(self.key())

    def key(self) -> tuple:
        return (self.size, self.vocab,
                tuple(tuple(sorted(self.unary[r])) for r in self.vocab.unary),
                tuple(tuple(self.pif[f].items()) for f in self.vocab.pifs),
                tuple(self.constants[c] for c in self.vocab.constants))

    # -- access -----------------------------------------------------------
    @property
    def elements(self) -> range:
        return range(1, self.size + 1)

    def apply(self, f: str, x: int | None) -> int | None:
        return None if x is None else self.pif[f].get(x)

    def apply_inverse(self, f: str, y: int | None) -> int | None:
        return None if y is None else self.inverse(f).get(y)

    def inverse(self, f: str) -> dict:
        return self._inverses[f]

    @cached_property
    def _inverses(self) -> dict:
        return {f: {b: a for a, b in m.items()} for f, m in self.pif.items()}

    @cached_property
    def arrays(self):
        """``(fwd, inv, unary, consts)`` arrays in the kernel layout."""
        n = self.size
        v = self.vocab
        fwd = np.zeros((len(v.pifs), n + 1), dtype=np.int32)
        inv = np.zeros((len(v.pifs), n + 1), dtype=np.int32)
        for i, f in enumerate(v.pifs):
            for a, b in self.pif[f].items():
                fwd[i, a] = b
                inv[i, b] = a
        un = np.zeros((len(v.unary), n + 1), dtype=np.uint8)
        for i, r in enumerate(v.unary):
            for x in self.unary[r]:
                un[i, x] = 1
        consts = np.array([self.constants[c] for c in v.constants], dtype=np.int32)
        return fwd, inv, un, consts

    # -- derived structures -------------------------------------------------
    def expand(self, vocab: Vocabulary | None = None, unary=None, pif=None,
               constants=None) -> "FiniteStructure":
        """Add (or replace) interpretations, growing the vocabulary as needed."""
        unary = dict(unary or {})
        pif = dict(pif or {})
        constants = dict(constants or {})
        voc = self.vocab.extend(unary, pif, constants)
        if vocab is not None:
            voc = voc.union(vocab)
        return FiniteStructure(self.size, voc, {**self.unary, **unary},
                               {**self.pif, **pif}, {**self.constants, **constants})

    def reduct(self, vocab: Vocabulary) -> "FiniteStructure":
        if not vocab.issubset(self.vocab):
            raise VocabularyError("reduct vocabulary is not contained in the structure's")
        return FiniteStructure(
            self.size, vocab, {r: self.unary[r] for r in vocab.unary},
            {f: self.pif[f] for f in vocab.pifs}, {c: self.constants[c] for c in vocab.constants})

    def relabel(self, perm: Mapping[int, int]) -> "FiniteStructure":
        """Image under the bijection ``perm`` of ``{1..size}`` onto itself."""
        if sorted(perm) != list(self.elements) or sorted(perm.values()) != list(self.elements):
            raise StructureError("relabeling must be a permutation of the universe")
        return FiniteStructure(
            self.size, self.vocab,
            {r: {perm[x] for x in s} for r, s in self.unary.items()},
            {f: {perm[a]: perm[b] for a, b in m.items()} for f, m in self.pif.items()},
            {c: perm[x] for c, x in self.constants.items()})

    def induced(self, elements: Iterable[int], constants: Mapping[str, int] | None = None,
                keep_constants: bool = False) -> tuple["FiniteStructure", dict]:
        """Substructure on ``elements`` relabeled to ``1..k`` in increasing order.

        Original constants are dropped unless ``keep_constants`` (then they
        must lie inside); ``constants`` adds new ones by original element.
        Returns the structure and the map from original to new labels.
        """
        elems = sorted(set(elements))
        if not elems:
            raise StructureError("induced substructure must be non-empty")
        new = {x: i + 1 for i, x in enumerate(elems)}
        extra = dict(constants or {})
        consts = {}
        if keep_constants:
            for c, x in self.constants.items():
                if x not in new:
                    raise StructureError(f"constant {c} lies outside the induced set")
                consts[c] = new[x]
        consts.update({c: new[x] for c, x in extra.items()})
        voc = Vocabulary(self.vocab.unary, self.vocab.pifs,
                         (self.vocab.constants if keep_constants else ()) + tuple(extra))
        sub = FiniteStructure(
            len(elems), voc,
            {r: {new[x] for x in s if x in new} for r, s in self.unary.items()},
            {f: {new[a]: new[b] for a, b in m.items() if a in new and b in new}
             for f, m in self.pif.items()},
            consts)
        return sub, new

    def delete_element(self, a: int) -> "FiniteStructure":
        sub, _ = self.induced([x for x in self.elements if x != a], keep_constants=True)
        return sub


# --- graphs ------------------------------------------------------------------

@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on ``{1..n}``; edges stored as ``(u, v)`` with u < v."""

    n: int
    edges: frozenset = frozenset()

    def __post_init__(self):
        norm = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise StructureError(f"self-loop at {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise StructureError(f"edge {u}-{v} outside 1..{self.n}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    @cached_property
    def adjacency(self) -> dict:
        adj = {v: set() for v in range(1, self.n + 1)}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def to_networkx(self):
        import networkx as nx
        g = nx.Graph()
        g.add_nodes_from(range(1, self.n + 1))
        g.add_edges_from(sorted(self.edges))
        return g

    @classmethod
    def from_networkx(cls, g) -> "Graph":
        """Relabel the nodes of ``g`` to ``1..n`` in sorted order."""
        nodes = sorted(g.nodes())
        idx = {v: i + 1 for i, v in enumerate(nodes)}
        return cls(len(nodes), frozenset((idx[u], idx[v]) for u, v in g.edges() if u != v))


@dataclass(frozen=True)
class ColoredGraph:
    """A graph with named vertex colors (unary relations)."""

    graph: Graph
    labels: Mapping[str, frozenset] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "labels",
                           {k: frozenset(v) for k, v in self.labels.items()})

    def __hash__(self):
        return hash((self.graph, tuple(sorted((k, tuple(sorted(v)))
                                              for k, v in self.labels.items()))))

    @property
    def n(self) -> int:
        return self.graph.n


def gaifman_graph(s: FiniteStructure) -> Graph:
    edges = set()
    for m in s.pif.values():
        for a, b in m.items():
            if a != b:
                edges.add((min(a, b), max(a, b)))
    return Graph(s.size, frozenset(edges))


def max_degree(g: Graph | FiniteStructure) -> int:
    if isinstance(g, FiniteStructure):
        g = gaifman_graph(g)
    return max((len(nb) for nb in g.adjacency.values()), default=0)


def is_planar(g: Graph | FiniteStructure) -> bool:
    from .planarity import is_planar as _planar
    return _planar(g)


# --- edge colouring: graphs as PIF structures --------------------------------

def edge_coloring(g: Graph) -> dict:
    """Greedy proper edge colouring, edges taken in sorted order.

    Uses at most ``2d - 1`` colours for maximum degree ``d``.
    """
    used = {v: set() for v in range(1, g.n + 1)}
    color = {}
    for u, v in sorted(g.edges):
        c = 0
        while c in used[u] or c in used[v]:
            c += 1
        color[(u, v)] = c
        used[u].add(c)
        used[v].add(c)
    return color


def graph_to_structure(g: Graph | ColoredGraph, ncolors: int | None = None,
                       prefix: str = "E") -> FiniteStructure:
    """Encode a graph as a PIF structure: each colour class of a greedy edge
    colouring becomes a PIF oriented from the smaller to the larger endpoint.
    Vertex colours of a :class:`ColoredGraph` become unary relations."""
    labels = {}
    if isinstance(g, ColoredGraph):
        labels = dict(g.labels)
        g = g.graph
    col = edge_coloring(g)
    k = max(col.values(), default=-1) + 1
    if ncolors is not None:
        if k > ncolors:
            raise StructureError(f"greedy colouring needs {k} colours, only {ncolors} allowed")
        k = ncolors
    names = tuple(f"{prefix}{i}" for i in range(k))
    pif = {nm: {} for nm in names}
    for (u, v), c in col.items():
        pif[names[c]][u] = v
    vocab = Vocabulary(tuple(sorted(labels)), names, ())
    return FiniteStructure(g.n, vocab, labels, pif, {})


def disjoint_union(a: FiniteStructure, b: FiniteStructure) -> FiniteStructure:
    if a.vocab != b.vocab:
        raise VocabularyError("disjoint union needs identical vocabularies")
    if a.vocab.constants:
        raise VocabularyError("disjoint union is undefined with constants")
    k = a.size
    return FiniteStructure(
        a.size + b.size, a.vocab,
        {r: set(a.unary[r]) | {x + k for x in b.unary[r]} for r in a.vocab.unary},
        {f: {**a.pif[f], **{x + k: y + k for x, y in b.pif[f].items()}} for f in a.vocab.pifs},
        {})


def cycle_structure(n: int, name: str = "E0") -> FiniteStructure:
    """The directed ``n``-cycle ``x -> x+1 (mod n)`` as a one-PIF structure."""
    return FiniteStructure(n, Vocabulary((), (name,), ()),
                           {}, {name: {x: x % n + 1 for x in range(1, n + 1)}}, {})


def path_structure(n: int, name: str = "E0") -> FiniteStructure:
    return FiniteStructure(n, Vocabulary((), (name,), ()),
                           {}, {name: {x: x + 1 for x in range(1, n)}}, {})


# --- random structures (tests, benchmarks) ----------------------------------

def random_pif(n: int, rng: random.Random, density: float = 0.7) -> dict:
    dom = [x for x in range(1, n + 1) if rng.random() < density]
    img = rng.sample(range(1, n + 1), len(dom))
    return dict(zip(dom, img))


def random_structure(vocab: Vocabulary, n: int, rng: random.Random,
                     density: float = 0.7) -> FiniteStructure:
    return FiniteStructure(
        n, vocab,
        {r: {x for x in range(1, n + 1) if rng.random() < 0.5} for r in vocab.unary},
        {f: random_pif(n, rng, density) for f in vocab.pifs},
        {c: rng.randint(1, n) for c in vocab.constants})


# --- isomorphism ----------------------------------------------------------------

def _refine(structs: list[FiniteStructure]) -> list[dict]:
    """Colour refinement run jointly on several structures so that colours
    are comparable between them."""
    voc = structs[0].vocab
    colors = []
    for s in structs:
        cmap = {}
        const_at = {}
        for i, c in enumerate(voc.constants):
            const_at.setdefault(s.constants[c], []).append(i)
        for x in s.elements:
            cmap[x] = (tuple(x in s.unary[r] for r in voc.unary),
                       tuple(x in s.pif[f] for f in voc.pifs),
                       tuple(x in s.inverse(f) for f in voc.pifs),
                       tuple(const_at.get(x, ())),
                       tuple(s.pif[f].get(x) == x for f in voc.pifs))
        colors.append(cmap)
    while True:
        sigs = []
        for s, cmap in zip(structs, colors):
            sig = {}
            for x in s.elements:
                sig[x] = (cmap[x],
                          tuple(cmap.get(s.pif[f].get(x)) for f in voc.pifs),
                          tuple(cmap.get(s.inverse(f).get(x)) for f in voc.pifs))
            sigs.append(sig)
        palette = {c: i for i, c in enumerate(sorted({repr(v) for sig in sigs for v in sig.values()}))}
        new = [{x: palette[repr(v)] for x, v in sig.items()} for sig in sigs]
        before = len({v for cm in colors for v in cm.values()})
        after = len({v for cm in new for v in cm.values()})
        colors = new
        if after == before:
            return colors


def find_isomorphism(a: FiniteStructure, b: FiniteStructure) -> dict | None:
    """A label map ``a -> b`` preserving every symbol, or ``None``."""
    if a.vocab != b.vocab:
        raise VocabularyError("isomorphism test needs identical vocabularies")
    if a.size != b.size:
        return None
    v = a.vocab
    if any(len(a.unary[r]) != len(b.unary[r]) for r in v.unary):
        return None
    if any(len(a.pif[f]) != len(b.pif[f]) for f in v.pifs):
        return None
    ca, cb = _refine([a, b])
    if Counter(ca.values()) != Counter(cb.values()):
        return None
    by_color: dict = {}
    for y in b.elements:
        by_color.setdefault(cb[y], []).append(y)

    def extend(mapping: dict, used: set, x: int, y: int) -> list | None:
        """Map x->y and propagate along PIF edges; return the pairs added."""
        added = []
        stack = [(x, y)]
        while stack:
            p, q = stack.pop()
            if p in mapping:
                if mapping[p] != q:
                    return _undo(mapping, used, added)
                continue
            if q in used or ca[p] != cb[q]:
                return _undo(mapping, used, added)
            mapping[p] = q
            used.add(q)
            added.append(p)
            for f in v.pifs:
                fp, fq = a.pif[f].get(p), b.pif[f].get(q)
                if (fp is None) != (fq is None):
                    return _undo(mapping, used, added)
                if fp is not None:
                    stack.append((fp, fq))
                gp, gq = a.inverse(f).get(p), b.inverse(f).get(q)
                if (gp is None) != (gq is None):
                    return _undo(mapping, used, added)
                if gp is not None:
                    stack.append((gp, gq))
        return added

    mapping: dict = {}
    used: set = set()
    # constants are forced
    for c in v.constants:
        if extend(mapping, used, a.constants[c], b.constants[c]) is None:
            return None
    order = sorted(a.elements, key=lambda x: (len(by_color[ca[x]]), x))

    def solve() -> bool:
        x = next((x for x in order if x not in mapping), None)
        if x is None:
            return True
        for y in by_color[ca[x]]:
            if y in used:
                continue
            added = extend(mapping, used, x, y)
            if added is None:
                continue
            if solve():
                return True
            _undo(mapping, used, added)
        return False

    if not solve():
        return None
    return dict(mapping)


def _undo(mapping, used, added):
    for p in added:
        used.discard(mapping.pop(p))
    return None


def isomorphic(a: FiniteStructure, b: FiniteStructure) -> bool:
    return find_isomorphism(a, b) is not None


# --- text format ---------------------------------------------------------------

class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


def serialize(s: FiniteStructure) -> str:
    lines = [f"structure N={s.size}"]
    for r in s.vocab.unary:
        elems = " ".join(str(x) for x in sorted(s.unary[r]))
        lines.append(f"unary {r}: {elems}".rstrip())
    for f in s.vocab.pifs:
        pairs = " ".join(f"{a}->{b}" for a, b in sorted(s.pif[f].items()))
        lines.append(f"pif {f}: {pairs}".rstrip())
    for c in s.vocab.constants:
        lines.append(f"const {c}={s.constants[c]}")
    return "\n".join(lines) + "\n"


_NAME = r"[A-Za-z_][A-Za-z0-9_']*"


def deserialize(text: str) -> FiniteStructure:
    n = None
    unary, pif, consts = {}, {}, {}
    order = {"unary": [], "pif": [], "const": []}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            m = re.fullmatch(r"structure\s+N\s*=\s*(\d+)", line)
            if not m:
                raise FormatError("expected 'structure N=<int>' header", lineno)
            n = int(m.group(1))
            if n < 1:
                raise FormatError("universe size must be positive", lineno)
            continue
        m = re.fullmatch(rf"(unary|pif)\s+({_NAME})\s*:(.*)", line)
        if m:
            kind, name, rest = m.groups()
            if name in unary or name in pif or name in consts:
                raise FormatError(f"symbol {name} declared twice", lineno)
            order[kind].append(name)
            if kind == "unary":
                try:
                    unary[name] = [int(t) for t in rest.split()]
                except ValueError:
                    raise FormatError(f"bad element list for {name}", lineno) from None
            else:
                pairs = {}
                for tok in rest.split():
                    pm = re.fullmatch(r"(\d+)->(\d+)", tok)
                    if not pm:
                        raise FormatError(f"bad pif entry {tok!r}", lineno)
                    a, b = int(pm.group(1)), int(pm.group(2))
                    if a in pairs:
                        raise FormatError(f"pif {name} has two values at {a}", lineno)
                    if b in pairs.values():
                        other = next(x for x, y in pairs.items() if y == b)
                        raise FormatError(
                            f"pif {name} is not injective: {other}->{b} and {a}->{b}", lineno)
                    pairs[a] = b
                pif[name] = pairs
            continue
        m = re.fullmatch(rf"const\s+({_NAME})\s*=\s*(\d+)", line)
        if m:
            name = m.group(1)
            if name in unary or name in pif or name in consts:
                raise FormatError(f"symbol {name} declared twice", lineno)
            order["const"].append(name)
            consts[name] = int(m.group(2))
            continue
        raise FormatError(f"unknown directive {line.split()[0]!r}", lineno)
    if n is None:
        raise FormatError("missing 'structure N=<int>' header")
    vocab = Vocabulary(tuple(order["unary"]), tuple(order["pif"]), tuple(order["const"]))
    try:
        return FiniteStructure(n, vocab, unary, pif, consts)
    except StructureError as e:
        raise FormatError(str(e)) from None
