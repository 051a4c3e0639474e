"""Text syntax for formulas.

Grammar (loosest binding first)::

    formula  := quant | iff
    quant    := ("exists" | "forall") IDENT+ "." formula
    iff      := imp ("<->" iff)?
    imp      := or ("->" imp)?
    or       := and ("|" and)*
    and      := neg ("&" neg)*
    neg      := "!" neg | quant | atom | "(" formula ")"
    atom     := "true" | "false" | "def" "(" term ")" | REL "(" term ")"
              | term "=" term | term "!=" term
    term     := VAR | CONST | FN "(" term ")" | FN "^-1" "(" term ")" | "(" term ")"

``#`` starts a comment running to the end of the line.  Identifiers that are
not in the vocabulary are variables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .syntax import (
    And, App, Const, Defined, Eq, Exists, FALSE, ForAll, Iff, Implies, Inv, Not, Or,
    TRUE, Unary, Var, Vocabulary,
)

KEYWORDS = {"exists", "forall", "def", "true", "false"}

_TOKEN = re.compile(r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<op><->|->|!=|\^-1|[!&|().=,])
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
""", re.VERBOSE)


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} at line {line}, column {col}")
        self.pos, self.line, self.col = pos, line, col


class UnknownSymbolError(ParseError):
    def __init__(self, symbol: str, pos: int, text: str):
        super().__init__(f"unknown symbol {symbol!r}", pos, text)
        self.symbol = symbol


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[_Tok]:
    out, i = [], 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if not m:
            raise ParseError(f"unexpected character {text[i]!r}", i, text)
        if m.lastgroup != "ws":
            out.append(_Tok(m.lastgroup, m.group(), i))
        i = m.end()
    out.append(_Tok("eof", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, vocab: Vocabulary):
        self.text = text
        self.vocab = vocab
        self.toks = tokenize(text)
        self.i = 0

    # token helpers
    def peek(self, k: int = 0) -> _Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self, text: str | None = None) -> _Tok:
        tok = self.peek()
        if text is not None and tok.text != text:
            found = tok.text or "end of input"
            raise ParseError(f"expected {text!r} but found {found!r}", tok.pos, self.text)
        self.i += 1
        return tok

    def fail(self, msg: str):
        raise ParseError(msg, self.peek().pos, self.text)

    # grammar
    def formula(self):
        if self.peek().text in ("exists", "forall"):
            return self.quant()
        return self.iff()

    def quant(self):
        kw = self.take().text
        names = []
        while self.peek().kind == "ident" and self.peek().text != ".":
            tok = self.take()
            self._check_var_name(tok)
            names.append(tok.text)
        if not names:
            self.fail("expected a variable after quantifier")
        self.take(".")
        body = self.formula()
        node = Exists if kw == "exists" else ForAll
        for nm in reversed(names):
            body = node(nm, body)
        return body

    def iff(self):
        left = self.imp()
        if self.peek().text == "<->":
            self.take()
            return Iff(left, self._rhs(self.iff))
        return left

    def imp(self):
        left = self.disj()
        if self.peek().text == "->":
            self.take()
            return Implies(left, self._rhs(self.imp))
        return left

    def _rhs(self, level):
        if self.peek().text in ("exists", "forall"):
            return self.quant()
        return level()

    def disj(self):
        items = [self.conj()]
        while self.peek().text == "|":
            self.take()
            items.append(self._operand(self.conj))
        return items[0] if len(items) == 1 else Or(tuple(items))

    def conj(self):
        items = [self.neg()]
        while self.peek().text == "&":
            self.take()
            items.append(self._operand(self.neg))
        return items[0] if len(items) == 1 else And(tuple(items))

    def _operand(self, level):
        # a trailing quantifier swallows the rest of the input, as usual
        if self.peek().text in ("exists", "forall"):
            return self.quant()
        return level()

    def neg(self):
        tok = self.peek()
        if tok.text == "!":
            self.take()
            return Not(self.neg())
        if tok.text in ("exists", "forall"):
            return self.quant()
        if tok.text == "(":
            save = self.i
            try:
                self.take("(")
                inner = self.formula()
                self.take(")")
                return inner
            except ParseError as first:
                self.i = save
                try:
                    return self.atom()
                except ParseError as second:
                    # report whichever reading got further
                    raise first if first.pos >= second.pos else second
        return self.atom()

    def atom(self):
        tok = self.peek()
        if tok.kind == "ident" and tok.text == "true":
            self.take()
            return TRUE
        if tok.kind == "ident" and tok.text == "false":
            self.take()
            return FALSE
        if tok.kind == "ident" and tok.text == "def":
            self.take()
            self.take("(")
            t = self.term()
            self.take(")")
            return Defined(t)
        if tok.kind == "ident" and self.peek(1).text == "(" and tok.text not in KEYWORDS:
            kind = self.vocab.kind(tok.text)
            if kind == "unary":
                self.take()
                self.take("(")
                t = self.term()
                self.take(")")
                return Unary(tok.text, t)
            if kind is None:
                raise UnknownSymbolError(tok.text, tok.pos, self.text)
        left = self.term()
        op = self.peek().text
        if op not in ("=", "!="):
            self.fail(f"expected '=' or '!=' after term, found {op or 'end of input'!r}")
        self.take()
        right = self.term()
        eq = Eq(left, right)
        return eq if op == "=" else Not(eq)

    def term(self):
        tok = self.peek()
        if tok.text == "(":
            self.take()
            t = self.term()
            self.take(")")
            return t
        if tok.kind != "ident" or tok.text in KEYWORDS:
            self.fail(f"expected a term, found {tok.text or 'end of input'!r}")
        self.take()
        kind = self.vocab.kind(tok.text)
        nxt = self.peek().text
        if nxt in ("(", "^-1"):
            if kind is None:
                raise UnknownSymbolError(tok.text, tok.pos, self.text)
            if kind != "pif":
                raise ParseError(f"{tok.text!r} is a {kind} symbol, not a function", tok.pos, self.text)
            inverse = nxt == "^-1"
            if inverse:
                self.take()
            self.take("(")
            arg = self.term()
            self.take(")")
            return Inv(tok.text, arg) if inverse else App(tok.text, arg)
        if kind == "const":
            return Const(tok.text)
        if kind is not None:
            raise ParseError(f"{kind} symbol {tok.text!r} used as a term", tok.pos, self.text)
        return Var(tok.text)

    def _check_var_name(self, tok: _Tok):
        if tok.text in KEYWORDS or tok.text in self.vocab:
            raise ParseError(f"{tok.text!r} cannot be used as a variable", tok.pos, self.text)


def parse_formula(text: str, vocab: Vocabulary | None = None):
    """Parse ``text`` into a formula over ``vocab``."""
    p = _Parser(text, vocab or Vocabulary())
    phi = p.formula()
    if p.peek().kind != "eof":
        p.fail(f"unexpected {p.peek().text!r}")
    return phi


def parse_term(text: str, vocab: Vocabulary | None = None):
    p = _Parser(text, vocab or Vocabulary())
    t = p.term()
    if p.peek().kind != "eof":
        p.fail(f"unexpected {p.peek().text!r}")
    return t


# --- printing --------------------------------------------------------------

_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4}


def format_term(t) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Const):
        return t.name
    if isinstance(t, App):
        return f"{t.fn}({format_term(t.arg)})"
    if isinstance(t, Inv):
        return f"{t.fn}^-1({format_term(t.arg)})"
    raise TypeError(f"not a term: {t!r}")


def _prec(phi) -> int:
    if isinstance(phi, (Exists, ForAll)):
        return 0
    if isinstance(phi, (And, Or)) and not phi.items:
        return 6
    return _PREC.get(type(phi), 6)


def format_formula(phi) -> str:
    """Render ``phi`` so that :func:`parse_formula` gives back the same tree."""
    if isinstance(phi, Unary):
        return f"{phi.rel}({format_term(phi.term)})"
    if isinstance(phi, Eq):
        return f"{format_term(phi.left)} = {format_term(phi.right)}"
    if isinstance(phi, Defined):
        return f"def({format_term(phi.term)})"
    if isinstance(phi, Not):
        if isinstance(phi.body, Eq):
            return f"{format_term(phi.body.left)} != {format_term(phi.body.right)}"
        inner = format_formula(phi.body)
        return "!" + (f"({inner})" if _prec(phi.body) < 6 else inner)
    if isinstance(phi, (Exists, ForAll)):
        kw = "exists" if isinstance(phi, Exists) else "forall"
        return f"{kw} {phi.var}. {format_formula(phi.body)}"
    if isinstance(phi, (And, Or)):
        if not phi.items:
            return "true" if isinstance(phi, And) else "false"
        me = _prec(phi)
        sep = " & " if isinstance(phi, And) else " | "
        return sep.join(_wrap(c, _prec(c) <= me) for c in phi.items)
    if isinstance(phi, (Implies, Iff)):
        me = _prec(phi)
        sym = " -> " if isinstance(phi, Implies) else " <-> "
        left = _wrap(phi.left, _prec(phi.left) <= me)
        # a bare quantifier would capture whatever an enclosing operator prints next
        right = _wrap(phi.right, _prec(phi.right) < me)
        return left + sym + right
    raise TypeError(f"not a formula: {phi!r}")


def _wrap(phi, paren: bool) -> str:
    s = format_formula(phi)
    return f"({s})" if paren else s


def parse_formula_file(text: str, vocab: Vocabulary | None = None):
    """Parse a formula file: optional ``unary:``/``pif:``/``const:`` header lines
    declaring the vocabulary, followed by the formula text.

    Returns ``(formula, vocabulary)``.
    """
    unary, pifs, consts = [], [], []
    body_lines = []
    header = True
    for line in text.splitlines():
        stripped = line.split("#", 1)[0].strip()
        m = re.match(r"^(unary|pif|const)\s*:(.*)$", stripped)
        if header and m:
            names = m.group(2).replace(",", " ").split()
            {"unary": unary, "pif": pifs, "const": consts}[m.group(1)].extend(names)
            body_lines.append("")
            continue
        if stripped:
            header = False
        body_lines.append(line)
    declared = Vocabulary(tuple(unary), tuple(pifs), tuple(consts))
    if vocab is not None:
        declared = vocab.union(declared)
    return parse_formula("\n".join(body_lines), declared), declared


def format_formula_file(phi, vocab: Vocabulary, parts=None) -> str:
    """Render a formula file that :func:`parse_formula_file` reads back.

    ``parts`` is an optional list of ``(name, sentence)`` pairs; each becomes
    one parenthesised conjunct preceded by a ``# name`` comment line.
    """
    lines = []
    for kind, names in (("unary", vocab.unary), ("pif", vocab.pifs), ("const", vocab.constants)):
        if names:
            lines.append(f"{kind}: {' '.join(names)}")
    if parts is None:
        lines.append(format_formula(phi))
    else:
        body = []
        for name, part in parts:
            body.append(f"# {name}\n({format_formula(part)})")
        lines.append(" &\n".join(body) if body else "true")
    return "\n".join(lines) + "\n"
