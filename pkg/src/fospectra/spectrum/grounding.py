"""Ground a sentence over a universe of fixed size into CNF.

Propositional variables:

* ``x[f, a, b]`` for "f(a) = b", with at most one true per row (function)
  and per column (injectivity);
* ``u[r, a]`` for "r(a)";
* ``c[k, a]`` for "constant k denotes a", exactly one per constant.

A ground term is represented by a sparse map ``element -> literal`` whose
literals are pairwise exclusive; a missing element means "never this
value".  Atoms are strict, so an atom is false whenever one of its terms
has no value.  Gates are Tseitin-encoded as equivalences and memoised.
"""

from __future__ import annotations

import itertools

from pysat.card import CardEnc, EncType

from ..logic.syntax import (
    And, App, Const, Defined, Eq, Exists, ForAll, Iff, Implies, Not, Or, Unary, Var,
    Vocabulary, free_vars,
)


class Grounding:
    """CNF for "some structure of size ``n`` satisfies ...".

    ``fixed`` maps PIF names to known interpretations; their entries become
    the constants True/False and fold away during grounding.
    """

    def __init__(self, vocab: Vocabulary, n: int, fixed: dict | None = None):
        self.vocab = vocab
        self.n = n
        self.fixed = dict(fixed or {})
        self.clauses: list[list[int]] = []
        self.nv = 0
        self._gates: dict = {}
        self._terms: dict = {}
        self._forms: dict = {}
        self._free: dict = {}
        elems = range(1, n + 1)
        self.x = {}
        for f in vocab.pifs:
            known = self.fixed.get(f)
            for a in elems:
                for b in elems:
                    self.x[f, a, b] = self.new() if known is None else known.get(a) == b
        self.u = {(r, a): self.new() for r in vocab.unary for a in elems}
        self.c = {(k, a): self.new() for k in vocab.constants for a in elems}
        for f in vocab.pifs:
            if f in self.fixed:
                continue
            for a in elems:
                self.at_most(1, [self.x[f, a, b] for b in elems])
                self.at_most(1, [self.x[f, b, a] for b in elems])
        for k in vocab.constants:
            self.exactly(1, [self.c[k, a] for a in elems])
        self._edges: dict | None = None

    # -- plumbing ------------------------------------------------------------
    def new(self) -> int:
        self.nv += 1
        return self.nv

    def _card(self, enc, lits, k):
        if not lits:
            return
        cnf = enc(lits=lits, bound=k, top_id=self.nv,
                  encoding=EncType.pairwise if k == 1 and len(lits) <= 6 else EncType.seqcounter)
        self.nv = max(self.nv, cnf.nv)
        self.clauses.extend(cnf.clauses)

    def at_most(self, k: int, lits):
        if len(lits) > k:
            self._card(CardEnc.atmost, list(lits), k)

    def exactly(self, k: int, lits):
        self._card(CardEnc.equals, list(lits), k)

    def assert_true(self, lit):
        if lit is True:
            return
        if lit is False:
            self.clauses.append([])
        else:
            self.clauses.append([lit])

    # -- gates ------------------------------------------------------------------
    def and_(self, lits):
        out = []
        for lit in lits:
            if lit is False:
                return False
            if lit is not True:
                out.append(lit)
        out = sorted(set(out))
        if not out:
            return True
        if len(out) == 1:
            return out[0]
        if any(-lit in out for lit in out):
            return False
        key = ("and", tuple(out))
        g = self._gates.get(key)
        if g is None:
            g = self._gates[key] = self.new()
            for lit in out:
                self.clauses.append([-g, lit])
            self.clauses.append([g] + [-lit for lit in out])
        return g

    def or_(self, lits):
        r = self.and_([self.neg(lit) for lit in lits])
        return self.neg(r)

    @staticmethod
    def neg(lit):
        return (not lit) if isinstance(lit, bool) else -lit

    def iff(self, a, b):
        return self.or_([self.and_([a, b]), self.and_([self.neg(a), self.neg(b)])])

    # -- terms -------------------------------------------------------------------
    def _term_key(self, t, env):
        if isinstance(t, Var):
            return ("e", env[t.name])
        if isinstance(t, Const):
            return ("c", t.name)
        return ("app" if isinstance(t, App) else "inv", t.fn, self._term_key(t.arg, env))

    def term(self, t, env) -> dict:
        return self._ground_term(self._term_key(t, env))

    def _ground_term(self, key) -> dict:
        hit = self._terms.get(key)
        if hit is not None:
            return hit
        if key[0] == "e":
            val = {key[1]: True}
        elif key[0] == "c":
            val = {a: self.c[key[1], a] for a in range(1, self.n + 1)}
        else:
            kind, f, sub = key
            inner = self._ground_term(sub)
            val = {}
            for b in range(1, self.n + 1):
                lits = [self.and_([la, self.x[(f, a, b) if kind == "app" else (f, b, a)]])
                        for a, la in inner.items()]
                lit = self.or_(lits)
                if lit is not False:
                    val[b] = lit
        self._terms[key] = val
        return val

    # -- formulas -------------------------------------------------------------
    def _fv(self, phi):
        k = id(phi)
        hit = self._free.get(k)
        if hit is None:
            hit = self._free[k] = (phi, tuple(sorted(free_vars(phi))))
        return hit[1]

    def formula(self, phi, env: dict | None = None):
        env = env or {}
        key = (id(phi), tuple(env[v] for v in self._fv(phi)))
        hit = self._forms.get(key)
        if hit is None:
            hit = self._forms[key] = self._formula(phi, env)
        return hit

    def _formula(self, phi, env):
        if isinstance(phi, Unary):
            val = self.term(phi.term, env)
            return self.or_([self.and_([lit, self.u[phi.rel, b]]) for b, lit in val.items()])
        if isinstance(phi, Eq):
            left, right = self.term(phi.left, env), self.term(phi.right, env)
            return self.or_([self.and_([lit, right[b]]) for b, lit in left.items() if b in right])
        if isinstance(phi, Defined):
            return self.or_(list(self.term(phi.term, env).values()))
        if isinstance(phi, Not):
            return self.neg(self.formula(phi.body, env))
        if isinstance(phi, And):
            return self.and_([self.formula(p, env) for p in phi.items])
        if isinstance(phi, Or):
            return self.or_([self.formula(p, env) for p in phi.items])
        if isinstance(phi, Implies):
            return self.or_([self.neg(self.formula(phi.left, env)), self.formula(phi.right, env)])
        if isinstance(phi, Iff):
            return self.iff(self.formula(phi.left, env), self.formula(phi.right, env))
        if isinstance(phi, (Exists, ForAll)):
            subs = [self.formula(phi.body, {**env, phi.var: a}) for a in range(1, self.n + 1)]
            return self.or_(subs) if isinstance(phi, Exists) else self.and_(subs)
        raise TypeError(f"not a formula: {phi!r}")

    def require(self, phi):
        """Assert a sentence; top-level conjunctions and universals become
        separate clauses instead of one wide gate."""
        todo = [(phi, {})]
        while todo:
            f, env = todo.pop()
            if isinstance(f, And):
                todo.extend((p, env) for p in f.items)
            elif isinstance(f, ForAll):
                todo.extend((f.body, {**env, f.var: a}) for a in range(1, self.n + 1))
            elif isinstance(f, (Or, Implies)):
                lits = ([self.formula(p, env) for p in f.items] if isinstance(f, Or) else
                        [self.neg(self.formula(f.left, env)), self.formula(f.right, env)])
                if not any(lit is True for lit in lits):
                    self.clauses.append([lit for lit in lits if lit is not False])
            else:
                self.assert_true(self.formula(f, env))

    # -- symmetry breaking ----------------------------------------------------------
    def break_symmetry(self):
        """Restrict to labellings in which the components of the first PIF are
        consecutive blocks, each laid out as ``i -> i+1`` and, for a cycle,
        closed by an edge back to the block start.  Every structure has such
        a labelling, so no isomorphism class is lost.  Without PIFs the first
        unary relation is made an initial segment, or the first constant 1."""
        n = self.n
        if self.fixed:
            raise ValueError("symmetry breaking would clash with fixed interpretations")
        if self.vocab.pifs:
            f = self.vocab.pifs[0]
            for i in range(1, n + 1):
                for j in range(i + 2, n + 1):
                    self.clauses.append([-self.x[f, i, j]])
                for j in range(1, i + 1):
                    for k in range(j, i):
                        self.clauses.append([-self.x[f, i, j], self.x[f, k, k + 1]])
        elif self.vocab.unary:
            r = self.vocab.unary[0]
            for i in range(1, n):
                self.clauses.append([-self.u[r, i + 1], self.u[r, i]])
        elif self.vocab.constants:
            self.clauses.append([self.c[self.vocab.constants[0], 1]])

    # -- Gaifman edges ------------------------------------------------------------
    def edges(self) -> dict:
        """``e[a, b]`` (a < b) implied by every PIF entry between a and b."""
        if self._edges is None:
            self._edges = {}
            for a, b in itertools.combinations(range(1, self.n + 1), 2):
                e = self._edges[a, b] = self.new()
                for f in self.vocab.pifs:
                    for lit in (self.x[f, a, b], self.x[f, b, a]):
                        if lit is True:
                            self.clauses.append([e])
                        elif lit is not False:
                            self.clauses.append([-lit, e])
        return self._edges

    def degree_at_most(self, d: int):
        e = self.edges()
        for a in range(1, self.n + 1):
            self.at_most(d, [e[min(a, b), max(a, b)] for b in range(1, self.n + 1) if b != a])

    def edges_at_most(self, k: int):
        self.at_most(k, list(self.edges().values()))

    # -- decoding -----------------------------------------------------------------
    def decode(self, model) -> tuple:
        true = {v for v in model if v > 0}
        n = self.n

        def holds(lit):
            return lit if isinstance(lit, bool) else lit in true

        pif = {f: {a: b for a in range(1, n + 1) for b in range(1, n + 1)
                   if holds(self.x[f, a, b])} for f in self.vocab.pifs}
        unary = {r: {a for a in range(1, n + 1) if self.u[r, a] in true} for r in self.vocab.unary}
        consts = {k: next(a for a in range(1, n + 1) if self.c[k, a] in true)
                  for k in self.vocab.constants}
        return unary, pif, consts
