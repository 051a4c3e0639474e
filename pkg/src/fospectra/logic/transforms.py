"""Sentence transformers realising the closure properties of spectra:
adding or removing one size, and shifting the spectrum up or down by one.
"""

from __future__ import annotations

import itertools

from .syntax import (
    FALSE, TRUE, And, App, Const, Defined, Eq, Exists, ForAll, Formula, Iff, Implies, Inv, Not, Or,
    Unary, Var, Vocabulary, VocabularyError, atom_terms, conj, disj, exists, forall,
    fresh_names, subterms, walk,
)


def exactly_n(n: int) -> Formula:
    """Sentence true exactly in structures with ``n`` elements."""
    if n < 1:
        raise ValueError("exactly_n needs n >= 1")
    xs = [Var(f"x{i}") for i in range(1, n + 1)]
    distinct = [Not(Eq(a, b)) for a, b in itertools.combinations(xs, 2)]
    cover = forall("y", disj(*[Eq(Var("y"), x) for x in xs]))
    return exists(" ".join(x.name for x in xs), conj(*distinct, cover))


def add_size(phi, n: int):
    return Or((phi, exactly_n(n)))


def remove_size(phi, n: int):
    return And((phi, Not(exactly_n(n))))


def _all_vars(phi) -> set[str]:
    out = set()
    for f in walk(phi):
        if isinstance(f, (Exists, ForAll)):
            out.add(f.var)
        for t in atom_terms(f):
            out |= {s.name for s in subterms(t) if isinstance(s, Var)}
    return out


def relativize(phi, r: str, vocab: Vocabulary | None = None, guard_terms: bool = False):
    """Restrict every quantifier of ``phi`` to the unary relation ``r``.

    With ``guard_terms`` each atom additionally requires every compound
    subterm to land in ``r``; then ``A |= phi^r`` iff the substructure induced
    by ``r`` satisfies ``phi``, for every structure ``A`` whose constants lie
    in ``r``.  Without it, that equivalence needs ``r`` closed under all PIFs
    and their inverses.
    """
    if vocab is not None and vocab.kind(r) != "unary":
        raise VocabularyError(f"{r!r} is not a unary symbol of the vocabulary")

    def go(f):
        if isinstance(f, Exists):
            return Exists(f.var, And((Unary(r, Var(f.var)), go(f.body))))
        if isinstance(f, ForAll):
            return ForAll(f.var, Implies(Unary(r, Var(f.var)), go(f.body)))
        if isinstance(f, (Unary, Eq, Defined)):
            if not guard_terms:
                return f
            guards = []
            for t in atom_terms(f):
                for s in subterms(t):
                    if isinstance(s, (App, Inv)):
                        g = Unary(r, s)
                        if g not in guards:
                            guards.append(g)
            return And((f, *guards)) if guards else f
        if isinstance(f, Not):
            return Not(go(f.body))
        if isinstance(f, And):
            return And(tuple(go(c) for c in f.items))
        if isinstance(f, Or):
            return Or(tuple(go(c) for c in f.items))
        if isinstance(f, Implies):
            return Implies(go(f.left), go(f.right))
        if isinstance(f, Iff):
            return Iff(go(f.left), go(f.right))
        raise TypeError(f"not a formula: {f!r}")

    return go(phi)


def _fresh_symbol(vocab: Vocabulary, stem: str) -> str:
    if stem not in vocab:
        return stem
    for i in itertools.count(1):
        if f"{stem}{i}" not in vocab:
            return f"{stem}{i}"


def shift_up(phi, vocab: Vocabulary, r: str = "R"):
    """Sentence whose spectrum is ``{n + 1 : n in spec(phi)}``.

    One element lies outside the new unary ``r``; it is isolated (no PIF
    edges) and no constant names it, so the ``r`` part is a model of ``phi``.
    The ``r`` part must be non-empty.
    """
    r = _fresh_symbol(vocab, r)
    out = vocab.extend(unary=(r,))
    x, y = Var("x"), Var("y")
    isolated = conj(*[conj(Not(Defined(App(f, x))), Not(Defined(Inv(f, x)))) for f in vocab.pifs])
    rho = conj(
        exists("x", conj(Not(Unary(r, x)),
                         forall("y", Implies(Not(Unary(r, y)), Eq(y, x))))),
        # structures are non-empty; without this a sentence true in the empty
        # structure would put 1 into the shifted spectrum
        exists("x", Unary(r, x)),
        forall("x", Implies(Not(Unary(r, x)), isolated)) if vocab.pifs else TRUE,
        *[Unary(r, Const(c)) for c in vocab.constants],
    )
    return conj(rho, relativize(phi, r, out)), out


# --- deleting one element ------------------------------------------------------

def companion_names(vocab: Vocabulary) -> dict:
    """Names of the unary symbols added by the element-deletion transform.

    ``to[f]`` holds the f-preimage of the deleted element, ``frm[f]`` its
    f-image; the flag relations ``loop[f]`` and ``member[r]`` are either
    everything or empty and record ``f(a) = a`` and ``r(a)`` for the deleted
    element ``a``.
    """
    names = {
        "to": {f: f"Rto_{f}" for f in vocab.pifs},
        "frm": {f: f"Rfrom_{f}" for f in vocab.pifs},
        "loop": {f: f"Loop_{f}" for f in vocab.pifs},
        "member": {r: f"Del_{r}" for r in vocab.unary},
    }
    for group in names.values():
        for nm in group.values():
            if nm in vocab:
                raise VocabularyError(f"companion symbol {nm!r} clashes with the vocabulary")
    return names


def companion_vocabulary(vocab: Vocabulary) -> Vocabulary:
    nm = companion_names(vocab)
    extra = []
    for f in vocab.pifs:
        extra += [nm["to"][f], nm["frm"][f]]
    extra += [nm["member"][r] for r in vocab.unary]
    extra += [nm["loop"][f] for f in vocab.pifs]
    return vocab.extend(unary=tuple(extra))


_A = ("a",)  # term value: the deleted element


class _Deleter:
    def __init__(self, phi, vocab: Vocabulary):
        self.vocab = vocab
        self.nm = companion_names(vocab)
        self.fresh = fresh_names(_all_vars(phi), "z")

    def flag(self, rel: str):
        v = Var(next(self.fresh))
        return Exists(v.name, Unary(rel, v))

    def cases(self, t, env):
        """Exclusive cases for the value of ``t``: triples
        ``(binders, guard, value)`` where value is ``_A`` or a term over the
        smaller structure and binders are existentially bound names."""
        if isinstance(t, Var):
            return [((), TRUE, _A if env.get(t.name) == "a" else t)]
        if isinstance(t, Const):
            return [((), TRUE, t)]
        f = t.fn
        out = []
        for bs, g, v in self.cases(t.arg, env):
            if isinstance(t, App):
                if v is _A:
                    out.append((bs, conj(g, self.flag(self.nm["loop"][f])), _A))
                    z = Var(next(self.fresh))
                    out.append((bs + (z.name,), conj(g, Unary(self.nm["frm"][f], z)), z))
                else:
                    out.append((bs, conj(g, Unary(self.nm["to"][f], v)), _A))
                    out.append((bs, conj(g, Defined(App(f, v))), App(f, v)))
            else:
                if v is _A:
                    out.append((bs, conj(g, self.flag(self.nm["loop"][f])), _A))
                    z = Var(next(self.fresh))
                    out.append((bs + (z.name,), conj(g, Unary(self.nm["to"][f], z)), z))
                else:
                    out.append((bs, conj(g, Unary(self.nm["frm"][f], v)), _A))
                    out.append((bs, conj(g, Defined(Inv(f, v))), Inv(f, v)))
        return out

    def atom(self, f, env):
        terms = atom_terms(f)
        options = []
        for combo in itertools.product(*[self.cases(t, env) for t in terms]):
            binders = tuple(b for c in combo for b in c[0])
            guard = conj(*[c[1] for c in combo])
            vals = [c[2] for c in combo]
            if isinstance(f, Eq):
                a, b = vals
                if a is _A and b is _A:
                    core = TRUE
                elif a is _A or b is _A:
                    continue
                else:
                    core = Eq(a, b)
            elif isinstance(f, Unary):
                (a,) = vals
                core = self.flag(self.nm["member"][f.rel]) if a is _A else Unary(f.rel, a)
            else:
                (a,) = vals
                core = TRUE if a is _A else Defined(a)
            body = conj(guard, core) if guard != TRUE else core
            options.append(exists(" ".join(binders), body) if binders else body)
        return disj(*options) if options else FALSE

    def tr(self, f, env):
        if isinstance(f, (Unary, Eq, Defined)):
            return self.atom(f, env)
        if isinstance(f, Not):
            return Not(self.tr(f.body, env))
        if isinstance(f, And):
            return And(tuple(self.tr(c, env) for c in f.items))
        if isinstance(f, Or):
            return Or(tuple(self.tr(c, env) for c in f.items))
        if isinstance(f, Implies):
            return Implies(self.tr(f.left, env), self.tr(f.right, env))
        if isinstance(f, Iff):
            return Iff(self.tr(f.left, env), self.tr(f.right, env))
        if isinstance(f, (Exists, ForAll)):
            inside = self.tr(f.body, {**env, f.var: "star"})
            at_a = self.tr(f.body, {**env, f.var: "a"})
            if isinstance(f, Exists):
                return Or((Exists(f.var, inside), at_a))
            return And((ForAll(f.var, inside), at_a))
        raise TypeError(f"not a formula: {f!r}")

    def consistency(self):
        x, y = Var("x"), Var("y")
        parts = []
        flags = list(self.nm["member"].values()) + list(self.nm["loop"].values())
        for fl in flags:
            parts.append(forall("x y", Implies(Unary(fl, x), Unary(fl, y))))
        for f in self.vocab.pifs:
            to, frm = self.nm["to"][f], self.nm["frm"][f]
            for rel in (to, frm):
                parts.append(forall("x y", Implies(And((Unary(rel, x), Unary(rel, y))), Eq(x, y))))
            parts.append(forall("x", Implies(Unary(to, x), Not(Defined(App(f, x))))))
            parts.append(forall("x", Implies(Unary(frm, x), Not(Defined(Inv(f, x))))))
            parts.append(Implies(self.flag(self.nm["loop"][f]),
                                 Not(exists("x", Or((Unary(to, x), Unary(frm, x)))))))
        return parts


def delete_element_transform(phi, vocab: Vocabulary):
    """Sentence ``phi*`` over the companion vocabulary such that
    ``A |= phi`` iff ``structure_companion(A, a) |= phi*`` for any element
    ``a`` not named by a constant.  Its spectrum is ``{n : n + 1 in spec(phi)}``
    (sizes ``n >= 1``, given more than ``len(constants)`` elements).
    """
    d = _Deleter(phi, vocab)
    return conj(*d.consistency(), d.tr(phi, {})), companion_vocabulary(vocab)


def structure_companion(struct, deleted: int):
    """Delete ``deleted`` and record its incidences in the companion relations."""
    from ..structures import FiniteStructure, StructureError

    n = struct.size
    if not 1 <= deleted <= n:
        raise StructureError(f"element {deleted} outside 1..{n}")
    if n == 1:
        raise StructureError("cannot delete the only element")
    for c, x in struct.constants.items():
        if x == deleted:
            raise StructureError(f"element {deleted} is named by constant {c}")
    vocab = struct.vocab
    nm = companion_names(vocab)
    sub, new = struct.induced([x for x in struct.elements if x != deleted], keep_constants=True)
    extra = {}
    everything = set(range(1, n))
    for f in vocab.pifs:
        m = struct.pif[f]
        extra[nm["to"][f]] = {new[b] for b, a in m.items() if a == deleted and b != deleted}
        img = m.get(deleted)
        extra[nm["frm"][f]] = {new[img]} if img is not None and img != deleted else set()
        extra[nm["loop"][f]] = everything if img == deleted else set()
    for r in vocab.unary:
        extra[nm["member"][r]] = everything if deleted in struct.unary[r] else set()
    cv = companion_vocabulary(vocab)
    return FiniteStructure(sub.size, cv, {**sub.unary, **extra}, sub.pif, sub.constants)
