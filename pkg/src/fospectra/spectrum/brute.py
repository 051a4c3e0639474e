"""Naive model enumeration: every interpretation of every symbol.

Used as the reference oracle for the SAT search and for exhaustive
uniqueness checks.  Symbols are assigned one per level in vocabulary order
(PIFs, then unary relations, then constants); each top-level conjunct is
evaluated as soon as all of its symbols have values, pruning the subtree.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .._kernels import compile_formulas, make_kernel
from ..logic.syntax import Vocabulary, conjuncts, symbols
from ..structures import FiniteStructure


@lru_cache(maxsize=16)
def partial_injections(n: int) -> tuple:
    """All partial injective maps on ``1..n`` as tuples ``t`` with
    ``t[a]`` the image of ``a`` (0 for undefined, index 0 unused)."""
    out = []
    row = [0] * (n + 1)
    used = [False] * (n + 1)

    def go(a):
        if a > n:
            out.append(tuple(row))
            return
        row[a] = 0
        go(a + 1)
        for b in range(1, n + 1):
            if not used[b]:
                used[b] = True
                row[a] = b
                go(a + 1)
                used[b] = False
        row[a] = 0

    go(1)
    return tuple(out)


def _inverse(row: tuple) -> tuple:
    inv = [0] * len(row)
    for a, b in enumerate(row):
        if a and b:
            inv[b] = a
    return tuple(inv)


def _subsets(n: int) -> np.ndarray:
    table = np.zeros((1 << n, n + 1), dtype=np.uint8)
    for mask in range(1 << n):
        for a in range(1, n + 1):
            table[mask, a] = (mask >> (a - 1)) & 1
    return table


class Enumeration:
    """Compiled enumeration of the models of ``phi`` of one size."""

    def __init__(self, phi, vocab: Vocabulary, n: int, backend: str | None = None):
        self.vocab, self.n = vocab, n
        levels = [(0, i, f) for i, f in enumerate(vocab.pifs)]
        levels += [(1, i, r) for i, r in enumerate(vocab.unary)]
        levels += [(2, i, c) for i, c in enumerate(vocab.constants)]
        if not levels:
            raise ValueError("nothing to enumerate: empty vocabulary")
        self.levels = levels
        depth = {name: k for k, (_, _, name) in enumerate(levels)}
        parts = conjuncts(phi)
        at = [max((depth[s] for s in symbols(p)), default=0) for p in parts]
        order = sorted(range(len(parts)), key=lambda i: at[i])
        self.prog = compile_formulas([parts[i] for i in order], vocab)
        self.kernel = make_kernel(self.prog, backend)
        self.check_roots = np.array([self.prog.roots[i] for i in range(len(order))], dtype=np.int32)
        starts = [0]
        for lvl in range(len(levels)):
            starts.append(sum(1 for i in order if at[i] <= lvl))
        self.check_start = np.array(starts, dtype=np.int32)
        rows = partial_injections(n)
        self.pif_fwd = np.array(rows, dtype=np.int32).reshape(len(rows), n + 1)
        self.pif_inv = np.array([_inverse(r) for r in rows], dtype=np.int32).reshape(len(rows), n + 1)
        self.unary = _subsets(n)
        p, u = len(vocab.pifs), len(vocab.unary)
        # the kernel needs a structure of the right shape before enumerating
        self.kernel.set_structure(
            n, np.zeros((p, n + 1), dtype=np.int32), np.zeros((p, n + 1), dtype=np.int32),
            np.zeros((u, n + 1), dtype=np.uint8), np.ones(len(vocab.constants), dtype=np.int32))

    def run(self, limit: int = 0, stop: int = 0) -> tuple[int, list, int]:
        kinds = np.array([k for k, _, _ in self.levels], dtype=np.int32)
        syms = np.array([i for _, i, _ in self.levels], dtype=np.int32)
        return self.kernel.enumerate(self.n, kinds, syms, self.pif_fwd, self.pif_inv,
                                     self.unary, self.check_start, self.check_roots,
                                     limit, stop)

    def structure(self, idx: tuple) -> FiniteStructure:
        unary, pif, consts = {}, {}, {}
        for (kind, _, name), c in zip(self.levels, idx):
            if kind == 0:
                row = self.pif_fwd[c]
                pif[name] = {a: int(row[a]) for a in range(1, self.n + 1) if row[a]}
            elif kind == 1:
                row = self.unary[c]
                unary[name] = {a for a in range(1, self.n + 1) if row[a]}
            else:
                consts[name] = int(c) + 1
        return FiniteStructure(self.n, self.vocab, unary, pif, consts)


def enumerate_models(phi, vocab: Vocabulary, n: int, limit: int = -1,
                     backend: str | None = None) -> tuple[int, list[FiniteStructure], int]:
    """``(count, models, nodes)``: the number of models of size ``n``, the
    first ``limit`` of them (all if negative) and the search-tree size."""
    e = Enumeration(phi, vocab, n, backend)
    count, idx, nodes = e.run(limit=limit)
    return count, [e.structure(t) for t in idx], nodes


def has_model(phi, vocab: Vocabulary, n: int, backend: str | None = None) -> bool:
    e = Enumeration(phi, vocab, n, backend)
    return e.run(limit=0, stop=1)[0] > 0


def brute_spectrum(phi, vocab: Vocabulary, sizes, backend: str | None = None) -> set[int]:
    return {n for n in sizes if has_model(phi, vocab, n, backend)}
