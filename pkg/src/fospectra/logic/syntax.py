"""First-order syntax over vocabularies of unary relations, partial injective
functions (PIFs) and constants.

Terms and formulas are immutable dataclasses, so they hash and compare
structurally and can be shared freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Union


class VocabularyError(ValueError):
    """A symbol is missing from, or clashes within, a vocabulary."""


@dataclass(frozen=True)
class Vocabulary:
    unary: tuple[str, ...] = ()
    pifs: tuple[str, ...] = ()
    constants: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "unary", tuple(self.unary))
        object.__setattr__(self, "pifs", tuple(self.pifs))
        object.__setattr__(self, "constants", tuple(self.constants))
        names = self.unary + self.pifs + self.constants
        if len(set(names)) != len(names):
            seen, dup = set(), []
            for nm in names:
                if nm in seen:
                    dup.append(nm)
                seen.add(nm)
            raise VocabularyError(f"duplicate symbol(s) in vocabulary: {sorted(set(dup))}")

    def kind(self, name: str) -> str | None:
        if name in self.unary:
            return "unary"
        if name in self.pifs:
            return "pif"
        if name in self.constants:
            return "const"
        return None

    def __contains__(self, name: str) -> bool:
        return self.kind(name) is not None

    def extend(self, unary=(), pifs=(), constants=()) -> "Vocabulary":
        """Return a vocabulary with the extra symbols appended (existing ones kept)."""
        def merge(old, new):
            return old + tuple(s for s in new if s not in old)
        return Vocabulary(merge(self.unary, unary), merge(self.pifs, pifs),
                          merge(self.constants, constants))

    def union(self, other: "Vocabulary") -> "Vocabulary":
        return self.extend(other.unary, other.pifs, other.constants)

    def issubset(self, other: "Vocabulary") -> bool:
        return (set(self.unary) <= set(other.unary) and set(self.pifs) <= set(other.pifs)
                and set(self.constants) <= set(other.constants))


# --- terms -----------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class App:
    fn: str
    arg: "Term"


@dataclass(frozen=True)
class Inv:
    """``fn^-1(arg)``: the unique preimage of ``arg`` under ``fn``, if any."""
    fn: str
    arg: "Term"


Term = Union[Var, Const, App, Inv]


# --- formulas --------------------------------------------------------------

@dataclass(frozen=True)
class Unary:
    rel: str
    term: Term


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Defined:
    term: Term


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    items: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))


@dataclass(frozen=True)
class Or:
    items: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class ForAll:
    var: str
    body: "Formula"


Formula = Union[Unary, Eq, Defined, Not, And, Or, Implies, Iff, Exists, ForAll]

TRUE = And(())
FALSE = Or(())


# --- small constructors used throughout the axiom builders -----------------

def var(name: str) -> Var:
    return Var(name)


def app(fn: str, t: Term, times: int = 1) -> Term:
    """``fn`` applied ``times`` times (``times`` may be 0)."""
    for _ in range(times):
        t = App(fn, t)
    return t


def inv(fn: str, t: Term) -> Inv:
    return Inv(fn, t)


def conj(*items) -> Formula:
    flat = []
    for it in items:
        if isinstance(it, And):
            flat.extend(it.items)
        else:
            flat.append(it)
    return flat[0] if len(flat) == 1 else And(tuple(flat))


def disj(*items) -> Formula:
    flat = []
    for it in items:
        if isinstance(it, Or):
            flat.extend(it.items)
        else:
            flat.append(it)
    return flat[0] if len(flat) == 1 else Or(tuple(flat))


def neg(phi: Formula) -> Formula:
    return phi.body if isinstance(phi, Not) else Not(phi)


def exists(names: str, body: Formula) -> Formula:
    for nm in reversed(names.split()):
        body = Exists(nm, body)
    return body


def forall(names: str, body: Formula) -> Formula:
    for nm in reversed(names.split()):
        body = ForAll(nm, body)
    return body


def undefined(t: Term) -> Formula:
    return Not(Defined(t))


def weak_eq(s: Term, t: Term) -> Formula:
    """Both sides undefined, or both defined and equal."""
    return Or((Eq(s, t), And((undefined(s), undefined(t)))))


# --- traversal -------------------------------------------------------------

def subterms(t: Term) -> Iterator[Term]:
    yield t
    if isinstance(t, (App, Inv)):
        yield from subterms(t.arg)


def children(phi: Formula) -> tuple:
    if isinstance(phi, (And, Or)):
        return phi.items
    if isinstance(phi, (Implies, Iff)):
        return (phi.left, phi.right)
    if isinstance(phi, (Not, Exists, ForAll)):
        return (phi.body,)
    return ()


def atom_terms(phi: Formula) -> tuple:
    if isinstance(phi, Unary):
        return (phi.term,)
    if isinstance(phi, Eq):
        return (phi.left, phi.right)
    if isinstance(phi, Defined):
        return (phi.term,)
    return ()


def walk(phi: Formula) -> Iterator[Formula]:
    stack = [phi]
    while stack:
        f = stack.pop()
        yield f
        stack.extend(reversed(children(f)))


def term_vars(t: Term) -> set[str]:
    return {s.name for s in subterms(t) if isinstance(s, Var)}


def free_vars(phi: Formula) -> set[str]:
    if isinstance(phi, (Exists, ForAll)):
        return free_vars(phi.body) - {phi.var}
    out: set[str] = set()
    for t in atom_terms(phi):
        out |= term_vars(t)
    for c in children(phi):
        out |= free_vars(c)
    return out


def symbols(phi: Formula) -> dict[str, str]:
    """Map every non-logical symbol in ``phi`` to its syntactic role."""
    out: dict[str, str] = {}
    for f in walk(phi):
        if isinstance(f, Unary):
            out[f.rel] = "unary"
        for t in atom_terms(f):
            for s in subterms(t):
                if isinstance(s, (App, Inv)):
                    out[s.fn] = "pif"
                elif isinstance(s, Const):
                    out[s.name] = "const"
    return out


def check_vocabulary(phi: Formula, vocab: Vocabulary) -> None:
    for name, role in symbols(phi).items():
        k = vocab.kind(name)
        if k is None:
            raise VocabularyError(f"unknown symbol {name!r}")
        if k != role:
            raise VocabularyError(f"symbol {name!r} is declared {k} but used as {role}")


def quantifier_depth(phi: Formula) -> int:
    inner = max((quantifier_depth(c) for c in children(phi)), default=0)
    return inner + 1 if isinstance(phi, (Exists, ForAll)) else inner


def conjuncts(phi: Formula) -> tuple:
    return phi.items if isinstance(phi, And) else (phi,)


def fresh_names(avoid: Iterable[str], stem: str = "v") -> Iterator[str]:
    avoid = set(avoid)
    i = 0
    while True:
        nm = f"{stem}{i}"
        if nm not in avoid:
            yield nm
        i += 1
