"""Flat array form of formulas, shared by the compiled and pure-Python kernels.

Terms and formulas become rows of small int32 tables.  A term evaluates to an
element in ``1..n`` or to ``0`` for "undefined"; the structure is given as

* ``fwd[p, x]``  value of PIF ``p`` at ``x`` (0 if undefined, row 0 unused),
* ``inv[p, y]``  the preimage of ``y`` under ``p`` (0 if none),
* ``unary[u, x]`` membership flag,
* ``consts[c]`` the element named by constant ``c``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..logic.syntax import (
    And, App, Const, Defined, Eq, Exists, ForAll, Iff, Implies, Inv, Not, Or,
    Unary, Var, Vocabulary, check_vocabulary, free_vars,
)

# term opcodes
T_VAR, T_CONST, T_APP, T_INV = 1, 2, 3, 4
# formula opcodes
F_UNARY, F_EQ, F_DEF, F_NOT, F_AND, F_OR, F_IMP, F_IFF, F_EX, F_ALL = range(10, 20)

OPCODES = {
    "T_VAR": T_VAR, "T_CONST": T_CONST, "T_APP": T_APP, "T_INV": T_INV,
    "F_UNARY": F_UNARY, "F_EQ": F_EQ, "F_DEF": F_DEF, "F_NOT": F_NOT,
    "F_AND": F_AND, "F_OR": F_OR, "F_IMP": F_IMP, "F_IFF": F_IFF,
    "F_EX": F_EX, "F_ALL": F_ALL,
}


class UnboundVariableError(ValueError):
    pass


@dataclass(frozen=True)
class Program:
    vocab: Vocabulary
    t_op: np.ndarray
    t_a: np.ndarray
    t_b: np.ndarray
    f_op: np.ndarray
    f_a: np.ndarray
    f_b: np.ndarray
    f_c: np.ndarray
    kids: np.ndarray
    roots: tuple[int, ...]
    free_slots: dict       # free variable name -> slot
    nslots: int


class _Builder:
    def __init__(self, vocab: Vocabulary):
        self.vocab = vocab
        self.pif = {nm: i for i, nm in enumerate(vocab.pifs)}
        self.un = {nm: i for i, nm in enumerate(vocab.unary)}
        self.const = {nm: i for i, nm in enumerate(vocab.constants)}
        self.terms: list[tuple[int, int, int]] = []
        self.tcache: dict = {}
        self.forms: list[list[int]] = []
        self.kids: list[int] = []
        self.nslots = 0

    def term(self, t, scope: dict) -> int:
        if isinstance(t, Var):
            if t.name not in scope:
                raise UnboundVariableError(f"free variable {t.name!r} is not assigned")
            key = (T_VAR, scope[t.name], 0)
        elif isinstance(t, Const):
            key = (T_CONST, self.const[t.name], 0)
        elif isinstance(t, App):
            key = (T_APP, self.pif[t.fn], self.term(t.arg, scope))
        elif isinstance(t, Inv):
            key = (T_INV, self.pif[t.fn], self.term(t.arg, scope))
        else:
            raise TypeError(f"not a term: {t!r}")
        idx = self.tcache.get(key)
        if idx is None:
            idx = self.tcache[key] = len(self.terms)
            self.terms.append(key)
        return idx

    def _emit(self, op, a=0, b=0, c=0) -> int:
        self.forms.append([op, a, b, c])
        return len(self.forms) - 1

    def form(self, phi, scope: dict) -> int:
        if isinstance(phi, Unary):
            return self._emit(F_UNARY, self.un[phi.rel], self.term(phi.term, scope))
        if isinstance(phi, Eq):
            return self._emit(F_EQ, self.term(phi.left, scope), self.term(phi.right, scope))
        if isinstance(phi, Defined):
            return self._emit(F_DEF, self.term(phi.term, scope))
        if isinstance(phi, Not):
            return self._emit(F_NOT, self.form(phi.body, scope))
        if isinstance(phi, (And, Or)):
            subs = [self.form(c, scope) for c in phi.items]
            off = len(self.kids)
            self.kids.extend(subs)
            return self._emit(F_AND if isinstance(phi, And) else F_OR, 0, off, len(subs))
        if isinstance(phi, (Implies, Iff)):
            a = self.form(phi.left, scope)
            b = self.form(phi.right, scope)
            return self._emit(F_IMP if isinstance(phi, Implies) else F_IFF, a, b)
        if isinstance(phi, (Exists, ForAll)):
            slot = self.nslots
            self.nslots += 1
            body = self.form(phi.body, {**scope, phi.var: slot})
            return self._emit(F_EX if isinstance(phi, Exists) else F_ALL, slot, body)
        raise TypeError(f"not a formula: {phi!r}")


def compile_formulas(formulas, vocab: Vocabulary, free: tuple[str, ...] = ()) -> Program:
    """Compile one or more formulas into a single :class:`Program`.

    ``free`` lists variables that will be supplied through the environment;
    they get the first slots, in order.
    """
    b = _Builder(vocab)
    scope = {}
    for nm in free:
        scope[nm] = b.nslots
        b.nslots += 1
    roots = []
    for phi in formulas:
        check_vocabulary(phi, vocab)
        missing = free_vars(phi) - set(scope)
        if missing:
            raise UnboundVariableError(f"free variable(s) {sorted(missing)} are not assigned")
        roots.append(b.form(phi, scope))
    terms = np.array(b.terms, dtype=np.int32).reshape(-1, 3)
    forms = np.array(b.forms, dtype=np.int32).reshape(-1, 4)
    return Program(
        vocab=vocab,
        t_op=np.ascontiguousarray(terms[:, 0]), t_a=np.ascontiguousarray(terms[:, 1]),
        t_b=np.ascontiguousarray(terms[:, 2]),
        f_op=np.ascontiguousarray(forms[:, 0]), f_a=np.ascontiguousarray(forms[:, 1]),
        f_b=np.ascontiguousarray(forms[:, 2]), f_c=np.ascontiguousarray(forms[:, 3]),
        kids=np.array(b.kids, dtype=np.int32),
        roots=tuple(roots), free_slots=dict(scope), nslots=max(b.nslots, 1),
    )
