"""First-order sentences for the spiral order, the arithmetic examples and the
machine encodings.

Every builder is backed by an :class:`AxiomSet`: a fixed, ordered list of
named conjuncts, so a failed check can say which conjunct broke.  "1" and
"N" are the definable ends of ``inc`` rather than constants.
"""

from __future__ import annotations

from dataclasses import dataclass

from .logic.semantics import Checker
from .logic.syntax import (
    App, Const, Defined, Eq, Exists, ForAll, Formula, Implies, Inv, Not, Unary, Var, Vocabulary,
    conj, disj, exists, forall, undefined, weak_eq,
)
from .generators import DBL, INC, SPIRAL_VOCAB
from .machines.queue import NEXT, RW, QueueMachine, queue_vocabulary
from .machines.tm import FL, FR, FU, TuringMachine, letter_symbol, state_symbol, tm_vocabulary


@dataclass(frozen=True)
class AxiomSet:
    name: str
    vocab: Vocabulary
    parts: tuple  # (name, sentence) pairs

    @property
    def formula(self):
        return conj(*[phi for _, phi in self.parts])

    @property
    def names(self) -> tuple:
        return tuple(nm for nm, _ in self.parts)

    def checker(self, backend: str | None = None) -> Checker:
        return Checker([phi for _, phi in self.parts], self.vocab, self.names, backend)


x, y, z, n, o = (Var(s) for s in "xyzno")


def inc(t, k=1):
    for _ in range(k):
        t = App(INC, t)
    return t


def dec(t):
    return Inv(INC, t)


def dbl(t):
    return App(DBL, t)


def first(t):
    return undefined(dec(t))


def last(t):
    return undefined(inc(t))


def _unique(var: str, prop) -> Formula:
    """Exactly one element satisfies ``prop``."""
    v, w = Var(var), Var(var + "2")
    return Exists(var, conj(prop(v), ForAll(w.name, Implies(prop(w), Eq(w, v)))))


def _exactly_one(t, rels) -> Formula:
    rels = list(rels)
    if not rels:
        return conj()
    options = []
    for r in rels:
        options.append(conj(Unary(r, t), *[Not(Unary(s, t)) for s in rels if s != r]))
    return disj(*options)


def _order_parts():
    return [
        ("next-unique", _unique("n", last)),
        ("prev-unique", _unique("o", first)),
    ]


def _phi_M_parts(literal: bool = False):
    parts = _order_parts() + [
        ("halving", forall("x", Implies(conj(Defined(dbl(x)), Defined(dec(x))),
                                        Eq(inc(dbl(dec(x)), 2), dbl(x))))),
        ("double-one", exists("o", conj(first(o), Eq(dbl(o), inc(o))))),
        # the element N (x+1 undefined) is exempt; see the decisions ledger
        ("even-or-odd", forall("x", Implies(Defined(inc(x)), disj(
            exists("y", Eq(x, dbl(y))), exists("y", Eq(inc(x), dbl(y))))))),
    ]
    if not literal:
        # without this, inc-cycles of odd length l carrying x -> 2x mod l
        # are extra models next to the chain
        parts.append(("odd-between", forall("x", Implies(Defined(inc(x)), Not(conj(
            exists("y", Eq(x, dbl(y))), exists("y", Eq(inc(x), dbl(y)))))))))
    return parts


def phi_M_set(literal: bool = False) -> AxiomSet:
    """``literal=True`` keeps only the five defining conditions, which also
    admit odd ``inc``-cycles beside the chain."""
    return AxiomSet("phi_M", SPIRAL_VOCAB, tuple(_phi_M_parts(literal)))


def phi_M(literal: bool = False):
    """Spiral order: the models are exactly ``{1..N}`` with ``inc`` and ``dbl``
    (``N >= 2``)."""
    return phi_M_set(literal).formula


def powers_set() -> AxiomSet:
    vocab = SPIRAL_VOCAB.extend(unary=("P",))
    p_def = disj(first(x), exists("y", conj(Unary("P", y), Eq(x, dbl(y)))))
    parts = _phi_M_parts() + [
        ("P-recursion", forall("x", conj(Implies(Unary("P", x), p_def),
                                         Implies(p_def, Unary("P", x))))),
        ("P-of-N", exists("n", conj(last(n), Unary("P", n)))),
    ]
    return AxiomSet("powers", vocab, tuple(parts))


def powers_axioms():
    return powers_set().formula


def composite_set() -> AxiomSet:
    vocab = SPIRAL_VOCAB.extend(pifs=("addc", "mulc"), constants=("C",))
    C = Const("C")

    def addc(t):
        return App("addc", t)

    def mulc(t):
        return App("mulc", t)

    parts = _phi_M_parts() + [
        ("add-one", exists("o", conj(first(o), weak_eq(addc(o), inc(C))))),
        ("add-step", forall("x", Implies(Defined(inc(x)), weak_eq(addc(inc(x)), inc(addc(x)))))),
        ("mul-one", exists("o", conj(first(o), Eq(mulc(o), C)))),
        ("mul-step", forall("x", Implies(Defined(inc(x)), weak_eq(mulc(inc(x)), addc(mulc(x)))))),
        ("C-not-one", Defined(dec(C))),
        ("N-multiple", exists("n y", conj(last(n), Defined(dec(y)), Eq(n, mulc(y))))),
    ]
    return AxiomSet("composite", vocab, tuple(parts))


def composite_axioms():
    return composite_set().formula


def _fib_core(F="F"):
    def f(t):
        return App(F, t)

    phi_def = disj(first(x), exists("y", conj(Eq(x, f(y)), Unary("Phi", y))))
    return [
        ("F-one", exists("o", conj(first(o), Eq(f(o), inc(o))))),
        ("F-step", forall("n", Implies(Defined(inc(n)), conj(
            Implies(Defined(Inv(F, n)), weak_eq(f(inc(n)), inc(f(n), 2))),
            Implies(undefined(Inv(F, n)), weak_eq(f(inc(n)), inc(f(n)))))))),
        ("Phi-recursion", forall("x", conj(Implies(Unary("Phi", x), phi_def),
                                           Implies(phi_def, Unary("Phi", x))))),
        ("Phi-of-N", exists("n", conj(last(n), Unary("Phi", n)))),
    ]


def fib_set(planar_variant: bool = False) -> AxiomSet:
    if planar_variant:
        vocab = Vocabulary(("Phi",), (INC, "F"), ())
        parts = _order_parts() + [
            # every x < N is F(y) or has x+1 = F(y): the analogue of even-or-odd
            ("F-covers", forall("x", Implies(Defined(inc(x)), disj(
                exists("y", Eq(x, App("F", y))), exists("y", Eq(inc(x), App("F", y))))))),
            # no three consecutive F-values; rules out inc-cycles of F-values
            ("F-window", forall("x", Implies(Defined(inc(x, 2)), disj(
                undefined(Inv("F", x)), undefined(Inv("F", inc(x))),
                undefined(Inv("F", inc(x, 2))))))),
        ] + _fib_core()
        return AxiomSet("fib-planar", vocab, tuple(parts))
    vocab = Vocabulary(("Phi",), (INC, DBL, "F"), ())
    return AxiomSet("fib", vocab, tuple(_phi_M_parts() + _fib_core()))


def fib_axioms(planar_variant: bool = False):
    return fib_set(planar_variant).formula


def binary_set() -> AxiomSet:
    vocab = SPIRAL_VOCAB.extend(pifs=("P",))

    def p(t):
        return App("P", t)

    parts = _phi_M_parts() + [
        ("P-one-is-N", exists("o n", conj(first(o), last(n), Eq(p(o), n)))),
        ("P-halving", forall("x", Implies(conj(Defined(p(x)), Not(first(p(x)))), disj(
            Eq(p(x), dbl(p(inc(x)))), Eq(p(x), inc(dbl(p(inc(x))))))))),
        ("P-prefix", forall("x", Implies(Defined(p(inc(x))), Defined(p(x))))),
    ]
    return AxiomSet("binary", vocab, tuple(parts))


def binary_axioms():
    return binary_set().formula


# --- Turing machine encodings ------------------------------------------------------

class _TMBuilder:
    def __init__(self, m: TuringMachine, exact_four: bool):
        self.m = m
        self.d = exact_four
        self.vocab = tm_vocabulary(m, exact_four)
        self.letters = [letter_symbol(a) for a in m.alphabet]
        self.states = [state_symbol(q) for q in m.states]
        self.finals = [state_symbol(q) for q in sorted(m.final)]

    def rel(self, t):
        return conj(Unary("R", t), Not(Unary("D", t))) if self.d else Unary("R", t)

    def all(self, names: str, body):
        for nm in reversed(names.split()):
            body = ForAll(nm, Implies(self.rel(Var(nm)), body))
        return body

    def ex(self, names: str, body):
        for nm in reversed(names.split()):
            body = Exists(nm, conj(self.rel(Var(nm)), body))
        return body

    def up_def(self, t):
        """``fu(t)`` is a real (non-dummy) element."""
        u = App(FU, t)
        return conj(Defined(u), Not(Unary("D", u))) if self.d else Defined(u)

    @staticmethod
    def via(fn: str, t, prop):
        """``prop(F_fn(t))`` with the case split on whether ``fn(t)`` is defined."""
        direct = App(fn, t)
        return disj(conj(Defined(direct), prop(direct)),
                    conj(undefined(direct), prop(App(fn, Inv(FU, t)))))

    @staticmethod
    def side_plus(fn: str, t):
        return disj(Unary("M", t), Unary("Tr" if fn == FR else "Tl", t))

    def has_side(self, fn, t):
        return self.via(fn, t, Defined)

    def parts(self, word: str | None):
        m, e = self.m, Var("e")
        up, down = (lambda t: App(FU, t)), (lambda t: Inv(FU, t))
        out = []
        closed = []
        for fn in (FL, FR, FU):
            for t in (App(fn, e), Inv(fn, e)):
                closed.append(Implies(Defined(t), Unary("R", t)))
        out.append(("R-closed", forall("e", Implies(Unary("R", e), conj(*closed)))))
        out.append(("kind-partition", self.all("e", _exactly_one(e, ["M", "Tl", "Tr"]))))
        out.append(("letter-partition", self.all("e", _exactly_one(e, self.letters))))
        out.append(("state-partition", self.all("e", conj(
            Implies(Unary("M", e), _exactly_one(e, self.states)),
            Implies(Not(Unary("M", e)), conj(*[Not(Unary(s, e)) for s in self.states]))))))
        if self.d:
            others = [r for r in self.vocab.unary if r not in ("R", "D")]
            below = down(e)
            out.append(("dummy-tower", forall("e", Implies(conj(Unary("R", e), Unary("D", e)), conj(
                *[Not(Unary(r, e)) for r in others],
                *[undefined(App(fn, e)) for fn in (FL, FR)],
                *[undefined(Inv(fn, e)) for fn in (FL, FR)],
                disj(Unary("D", below), conj(Unary("M", below), disj(*[Unary(s, below) for s in self.finals]))),
                disj(undefined(up(e)), Unary("D", up(e))))))))
        out.append(("link-sides", self.all("e", conj(
            Implies(Unary("Tr", e), undefined(App(FL, e))),
            Implies(Unary("Tl", e), undefined(App(FR, e)))))))
        for fn, tside, nm in ((FL, "Tl", "left-end"), (FR, "Tr", "right-end")):
            other = "Tr" if tside == "Tl" else "Tl"

            def is_end(t, fn=fn, other=other):
                return conj(self.rel(t), Not(Unary(other, t)), Not(self.has_side(fn, t)))
            v, w = Var("v"), Var("w")
            out.append((nm, Exists("v", conj(
                is_end(v), Unary(tside, v), undefined(down(v)), Not(self.up_def(v)),
                ForAll("w", Implies(is_end(w), Eq(w, v)))))))
        out.append(("tape-unchanged", self.all("e", Implies(
            conj(Not(Unary("M", e)), self.up_def(e)),
            conj(*[Implies(Unary(c, e), Unary(c, up(e))) for c in self.letters])))))
        for fn, back, tside, label in ((FR, FL, "Tr", "right"), (FL, FR, "Tl", "left")):
            def side(t, fn=fn):
                return App(fn, t)
            sp = self.side_plus
            out.append((f"{label}-height-1", self.all("e", Implies(
                conj(sp(fn, e), Unary(tside, up(e)), Defined(side(e)), Defined(side(up(e)))),
                Eq(up(side(e)), side(up(e)))))))
            # guarded: both elements above e must be on this side of the head
            out.append((f"{label}-height-2", self.all("e", Implies(
                conj(sp(fn, e), sp(fn, up(e)), sp(fn, up(up(e))), Defined(side(e)),
                     undefined(side(up(e)))),
                Eq(up(side(e)), side(up(up(e))))))))
            out.append((f"{label}-no-greater-height", self.all("e", Implies(
                conj(self.up_def(e), sp(fn, e), sp(fn, up(e))),
                disj(Defined(side(e)), Defined(side(up(e))))))))
        m0 = Var("e")
        out.append(("time-zero", conj(
            _unique_rel(self, lambda t: conj(Unary("M", t), undefined(down(t)))),
            self.all("e", Implies(undefined(down(e)), conj(
                undefined(down(App(FR, e))), undefined(down(App(FL, e)))))),
            self.all("e", Implies(conj(Unary("M", m0), undefined(down(m0))),
                                  Unary(state_symbol(m.initial), m0))))))
        if word is not None:
            bottom_cells = [e]
            t = e
            for _ in range(1, len(word)):
                t = App(FR, t)
                bottom_cells.append(t)
            cells = bottom_cells[:len(word)]
            xb = Var("b")
            out.append(("input-word", self.ex("e", conj(
                Unary("M", e), undefined(down(e)),
                *[Unary(letter_symbol(a), c) for a, c in zip(word, cells)],
                self.all("b", Implies(undefined(down(xb)), disj(
                    *[Eq(xb, c) for c in cells], Unary(letter_symbol(m.blank), xb))))))))

        def top(t):
            return Not(self.up_def(t))
        out.append(("end-of-computation", conj(
            _unique_rel(self, lambda t: conj(Unary("M", t), top(t))),
            self.all("e", Implies(conj(Unary("M", e), top(e)), disj(*[Unary(s, e) for s in self.finals]))),
            self.all("e", Implies(conj(Unary("M", e), disj(*[Unary(s, e) for s in self.finals])), top(e))),
            # F_fl / F_fr only describe neighbours on the element's own side
            self.all("e", Implies(top(e), conj(
                Implies(self.side_plus(FL, e), self.via(FL, e, lambda u: disj(undefined(u), top(u)))),
                Implies(self.side_plus(FR, e), self.via(FR, e, lambda u: disj(undefined(u), top(u))))))))))
        steps = []
        for q in m.states:
            if q in m.final:
                continue
            for a in m.alphabet:
                opts = []
                for tr in m.options(q, a):
                    fn, back = (FR, FL) if tr.move == "R" else (FL, FR)
                    opts.append(conj(
                        Unary(letter_symbol(tr.write), up(e)),
                        self.via(fn, e, lambda u, back=back, tr=tr: conj(
                            Unary("M", up(u)), Eq(up(e), App(back, up(u))),
                            Unary(state_symbol(tr.target), up(u))))))
                steps.append(Implies(conj(Unary(state_symbol(q), e), Unary(letter_symbol(a), e)),
                                     disj(*opts)))
        out.append(("correct-computation", self.all("e", Implies(Unary("M", e), conj(*steps)))))
        return out


def _unique_rel(b: _TMBuilder, prop):
    v, w = Var("v"), Var("w")
    return Exists("v", conj(b.rel(v), prop(v),
                            ForAll("w", Implies(conj(b.rel(w), prop(w)), Eq(w, v)))))


def tm_set(m: TuringMachine, word: str | None = None, exact_four: bool = False) -> AxiomSet:
    """Axioms for layered encodings of accepting runs of ``m``.

    Quantifiers range over ``R`` (minus the ``D`` dummies with ``exact_four``).
    With ``word`` the bottom layer must spell ``word`` from the head element
    rightwards with blanks elsewhere.
    """
    if word is not None:
        m.check_input(word)
    b = _TMBuilder(m, exact_four)
    return AxiomSet("tm", b.vocab, tuple(b.parts(word)))


def tm_axioms(m: TuringMachine, word: str | None = None, exact_four: bool = False):
    return tm_set(m, word, exact_four).formula


# --- queue machine encodings -------------------------------------------------------------

def _nxt(t, k=1):
    for _ in range(k):
        t = App(NEXT, t)
    return t


def queue_set(m: QueueMachine, initial: str | None = None) -> AxiomSet:
    if not m.rules:
        raise ValueError("queue machine has no rules")
    if initial is not None:
        m.check_input(initial)
    vocab = queue_vocabulary(m)
    letters = [letter_symbol(a) for a in m.alphabet]
    states = [state_symbol(q) for q in m.states]
    running = [state_symbol(q) for q in m.states if q not in m.final]
    finals = [state_symbol(q) for q in sorted(m.final)]

    def q_first(t):
        return undefined(Inv(NEXT, t))

    def q_last(t):
        return undefined(App(NEXT, t))

    def marked(t):
        return disj(*[Unary(s, t) for s in states])

    def rw(t):
        return App(RW, t)

    start = [q_first(o), Unary(state_symbol(m.initial), o)]
    if initial is not None:
        start += [Unary(letter_symbol(a), _nxt(o, i)) for i, a in enumerate(initial)]
        if m.initial not in m.final:
            start.append(Eq(rw(o), _nxt(o, len(initial))))
    parts = [
        ("ends", conj(_unique("n", q_last), _unique("o", q_first))),
        ("letter-partition", forall("x", _exactly_one(x, letters))),
        ("state-at-most-one", forall("x", conj(*[
            Implies(Unary(s, x), conj(*[Not(Unary(t, x)) for t in states if t != s])) for s in states]))),
        ("start", exists("o", conj(*start))),
        ("rw-at-read-positions", forall("x", conj(
            Implies(Defined(rw(x)), disj(*[Unary(s, x) for s in running])),
            Implies(disj(*[Unary(s, x) for s in running]), Defined(rw(x)))))),
    ]
    steps = []
    for q in m.states:
        if q in m.final:
            continue
        opts = []
        for r in m.rules:
            if r.state != q:
                continue
            k1, k2 = len(r.read), len(r.write)
            nxt = _nxt(x, k1)
            body = [Unary(letter_symbol(a), _nxt(x, i)) for i, a in enumerate(r.read)]
            body += [Unary(letter_symbol(a), _nxt(rw(x), j)) for j, a in enumerate(r.write)]
            for i in range(1, k1):
                body.append(Not(marked(_nxt(x, i))))
            body.append(Unary(state_symbol(r.target), nxt))
            if r.target in m.final:
                body.append(q_last(_nxt(rw(x), k2 - 1)))
            else:
                body.append(Eq(rw(nxt), _nxt(rw(x), k2)))
            opts.append(conj(*body))
        steps.append(Implies(Unary(state_symbol(q), x), disj(*opts)))
    parts.append(("transitions", forall("x", conj(*steps))))
    reach = disj(*[conj(Unary(state_symbol(r.state), y), Eq(x, _nxt(y, len(r.read)))) for r in m.rules])
    parts.append(("marks-reached", forall("x", Implies(conj(marked(x), Not(q_first(x))),
                                                        exists("y", reach)))))
    v, w = Var("v"), Var("w")
    fin = lambda t: disj(*[Unary(s, t) for s in finals])  # noqa: E731
    parts.append(("halts", Exists("v", conj(fin(v), ForAll("w", Implies(fin(w), Eq(w, v)))))))
    return AxiomSet("queue", vocab, tuple(parts))


def queue_axioms(m: QueueMachine, initial: str | None = None):
    return queue_set(m, initial).formula


FAMILIES = {
    "phi_M": phi_M_set,
    "powers": powers_set,
    "composite": composite_set,
    "fib": lambda: fib_set(False),
    "fib-planar": lambda: fib_set(True),
    "binary": binary_set,
}


def axiom_set(family: str) -> AxiomSet:
    try:
        return FAMILIES[family]()
    except KeyError:
        raise ValueError(f"unknown axiom family {family!r} (have: {', '.join(FAMILIES)})") from None
