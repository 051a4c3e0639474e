"""Radius-r neighbourhoods, their canonical isomorphism types, and capped
type censuses of bounded-degree structures.

Types are taken over the full induced PIF substructure (finer than the
coloured-graph types, so census equality still implies agreement on
first-order sentences).  Because every PIF is injective, each element has at
most one neighbour per (symbol, direction) label, so a breadth-first walk
from the root that takes labels in a fixed order numbers the ball
canonically without any backtracking.
"""

from __future__ import annotations

import hashlib
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable

from .logic.syntax import Vocabulary, VocabularyError
from .structures import FiniteStructure, StructureError, gaifman_graph, max_degree

ROOT = "_root"


class DegreeError(ValueError):
    """A structure exceeds the degree bound of a census."""


def ball_bound(d: int, r: int) -> int:
    """``1 + d(d-1)^(r-1)``, the bound used for ``S_r``; ``1 + d`` when
    ``d = 1``.  It undercounts balls for ``r >= 2`` and ``d >= 2`` (see
    :func:`moore_bound`)."""
    if r <= 0 or d == 0:
        return 1
    if d == 1:
        return 1 + d
    return 1 + d * (d - 1) ** (r - 1)


def moore_bound(d: int, r: int) -> int:
    """Largest possible radius-``r`` ball in a graph of maximum degree ``d``."""
    if r <= 0 or d == 0:
        return 1
    return 1 + sum(d * (d - 1) ** i for i in range(r))


def ball(s: FiniteStructure, v: int, r: int) -> list[int]:
    if r < 0:
        raise ValueError("radius must be non-negative")
    if not 1 <= v <= s.size:
        raise StructureError(f"element {v} outside 1..{s.size}")
    adj = gaifman_graph(s).adjacency
    dist = {v: 0}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        if dist[u] == r:
            continue
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return sorted(dist)


def neighborhood(s: FiniteStructure, v: int, r: int) -> FiniteStructure:
    """Substructure induced by the radius-``r`` ball around ``v`` with the
    root named by the constant ``_root``.  Constants of ``s`` are dropped."""
    if ROOT in s.vocab:
        raise VocabularyError(f"{ROOT!r} is reserved for the root")
    sub, _ = s.induced(ball(s, v, r), constants={ROOT: v})
    return sub


@dataclass(frozen=True, order=True)
class NeighborhoodType:
    """Canonical rooted structure: elements ``1..size``, root ``1``."""

    size: int
    code: tuple = field(repr=False)

    def digest(self) -> str:
        return hashlib.sha1(repr(self.code).encode("ascii")).hexdigest()[:12]

    def structure(self, vocab: Vocabulary) -> FiniteStructure:
        unary_code, pif_code = self.code
        return FiniteStructure(
            self.size, Vocabulary(vocab.unary, vocab.pifs, (ROOT,)),
            {r: set(xs) for r, xs in zip(vocab.unary, unary_code)},
            {f: dict(m) for f, m in zip(vocab.pifs, pif_code)},
            {ROOT: 1})

    def dump(self) -> str:
        unary_code, pif_code = self.code
        parts = [f"n={self.size}"]
        parts += ["u" + ",".join(map(str, xs)) for xs in unary_code]
        parts += ["f" + ",".join(f"{a}>{b}" for a, b in m) for m in pif_code]
        return " ".join(parts)


def canonical_type(nb: FiniteStructure, max_size: int = 256) -> NeighborhoodType:
    """Canonical form of a rooted structure whose elements are all reachable
    from the root along PIF edges (as in any neighbourhood)."""
    if ROOT not in nb.vocab.constants:
        raise VocabularyError(f"rooted structure must interpret {ROOT!r}")
    if nb.size > max_size:
        raise StructureError(f"neighbourhood of size {nb.size} exceeds {max_size}")
    pifs = nb.vocab.pifs
    order = {nb.constants[ROOT]: 1}
    queue = deque([nb.constants[ROOT]])
    while queue:
        u = queue.popleft()
        for f in pifs:
            for w in (nb.pif[f].get(u), nb.inverse(f).get(u)):
                if w is not None and w not in order:
                    order[w] = len(order) + 1
                    queue.append(w)
    if len(order) != nb.size:
        raise StructureError("rooted structure is not connected to its root")
    unary_code = tuple(tuple(sorted(order[x] for x in nb.unary[r])) for r in nb.vocab.unary)
    pif_code = tuple(tuple(sorted((order[a], order[b]) for a, b in nb.pif[f].items()))
                     for f in pifs)
    return NeighborhoodType(nb.size, (unary_code, pif_code))


@dataclass(frozen=True)
class TypeCensus:
    r: int
    M: int
    d: int
    vocab: Vocabulary
    counts: tuple  # sorted (type, count) pairs, counts in 1..M

    def as_dict(self) -> dict:
        return dict(self.counts)

    def count(self, t: NeighborhoodType) -> int:
        return self.as_dict().get(t, 0)

    def merge(self, other: "TypeCensus") -> "TypeCensus":
        """Census of the disjoint union: capped sum of the counts."""
        if (self.r, self.M, self.d, self.vocab) != (other.r, other.M, other.d, other.vocab):
            raise ValueError("censuses with different parameters")
        total = Counter(self.as_dict())
        total.update(other.as_dict())
        return _census(self.r, self.M, self.d, self.vocab, total)

    def lines(self) -> list[str]:
        return [f"type {t.digest()} count {k}" for t, k in self.counts]


def _census(r, M, d, vocab, counter) -> TypeCensus:
    items = tuple(sorted((t, min(k, M)) for t, k in counter.items() if k > 0))
    return TypeCensus(r, M, d, vocab, items)


def type_census(s: FiniteStructure, r: int, M: int, d: int,
                elements: Iterable[int] | None = None) -> TypeCensus:
    """``f_{r,M}``: how many elements (capped at ``M``) realise each type.

    ``elements`` restricts the count to a subset, so a census can be split
    across workers and the parts combined with :meth:`TypeCensus.merge`.
    """
    if M < 1 or r < 0:
        raise ValueError("need M >= 1 and r >= 0")
    deg = max_degree(s)
    if deg > d:
        raise DegreeError(f"structure has degree {deg} > {d}")
    counter = Counter()
    for v in (s.elements if elements is None else elements):
        counter[canonical_type(neighborhood(s, v, r), max_size=moore_bound(d, r))] += 1
    return _census(r, M, d, s.vocab, counter)


def hanf_equivalent(a: FiniteStructure, b: FiniteStructure, r: int, M: int, d: int) -> bool:
    if a.vocab != b.vocab:
        raise VocabularyError("structures over different vocabularies")
    return type_census(a, r, M, d) == type_census(b, r, M, d)
