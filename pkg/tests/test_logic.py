import pytest
from hypothesis import given, settings, strategies as st

from fospectra.generators import spiral
from fospectra.logic import (
    And, App, Checker, Const, Defined, Eq, ForAll, Inv, Not, ParseError, UnboundVariableError,
    UnknownSymbolError, Var, Vocabulary, VocabularyError, conj, evaluate, exists,
    format_formula, format_formula_file, free_vars, parse_formula, parse_formula_file,
    quantifier_depth, relativize,
)

V = Vocabulary(("P",), ("f", "g"), ("c",))


def test_parse_examples():
    phi = parse_formula("forall x. def(f(x)) -> P(f(x))", V)
    assert isinstance(phi, ForAll)
    assert free_vars(phi) == set()
    assert parse_formula("f^-1(c) = c", V) == Eq(Inv("f", Const("c")), Const("c"))
    assert parse_formula("x != y", V) == Not(Eq(Var("x"), Var("y")))
    assert parse_formula("exists x y. x = y", V) == exists("x y", Eq(Var("x"), Var("y")))


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as e:
        parse_formula("forall x. (P(x)", V)
    assert e.value.line == 1
    with pytest.raises(UnknownSymbolError):
        parse_formula("Q(x)", V)
    with pytest.raises(ParseError):
        parse_formula("P(x) $", V)


def test_comments_and_file_header():
    text = "unary: P\npif: f\n# a comment\nforall x. P(x) -> def(f(x))  # trailing\n"
    phi, vocab = parse_formula_file(text)
    assert vocab == Vocabulary(("P",), ("f",), ())
    assert quantifier_depth(phi) == 1


def _terms(depth):
    base = st.sampled_from([Var("x"), Var("y"), Const("c")])
    if depth == 0:
        return base
    sub = _terms(depth - 1)
    return st.one_of(base, st.builds(App, st.sampled_from(["f", "g"]), sub),
                     st.builds(Inv, st.sampled_from(["f", "g"]), sub))


def _formulas(depth):
    from fospectra.logic import Defined, Iff, Implies, Or, Unary
    t = _terms(2)
    atoms = st.one_of(st.builds(Unary, st.just("P"), t), st.builds(Eq, t, t),
                      st.builds(Defined, t))
    if depth == 0:
        return atoms
    sub = _formulas(depth - 1)
    return st.one_of(
        atoms, st.builds(Not, sub),
        st.builds(lambda a, b: And((a, b)), sub, sub), st.builds(lambda a, b: Or((a, b)), sub, sub),
        st.builds(Implies, sub, sub), st.builds(Iff, sub, sub),
        st.builds(lambda v, b: ForAll(v, b), st.sampled_from("xy"), sub),
        st.builds(lambda v, b: exists(v, b), st.sampled_from("xy"), sub))


@settings(max_examples=300, deadline=None)
@given(_formulas(3))
def test_format_parse_roundtrip(phi):
    assert parse_formula(format_formula(phi), V) == phi


def test_formula_file_roundtrip():
    from fospectra.axioms import fib_set
    a = fib_set(True)
    phi, vocab = parse_formula_file(format_formula_file(a.formula, a.vocab, a.parts))
    assert (phi, vocab) == (a.formula, a.vocab)


def test_strict_semantics(backend):
    s = spiral(4)
    x = Var("x")
    # 4 + 1 is undefined, so both the equation and its negated atom are false
    last = {"x": 4}
    assert not evaluate(s, Eq(App("inc", x), App("inc", x)), last, backend)
    assert evaluate(s, Not(Eq(App("inc", x), App("inc", x))), last, backend)
    assert not evaluate(s, Defined(App("dbl", x)), {"x": 3}, backend)
    assert not evaluate(s, Eq(App("dbl", x), App("inc", App("inc", x))), {"x": 1}, backend)
    assert evaluate(s, Eq(App("dbl", x), App("inc", App("inc", x))), {"x": 2}, backend)


def test_evaluate_errors():
    s = spiral(3)
    with pytest.raises(UnboundVariableError):
        evaluate(s, Eq(Var("x"), Var("x")))
    with pytest.raises(VocabularyError):
        evaluate(s, parse_formula("P(x)", Vocabulary(("P",), (), ())), {"x": 1})
    with pytest.raises(ValueError):
        evaluate(s, Eq(Var("x"), Var("x")), {"x": 9})


def test_checker_failures(backend):
    s = spiral(5)
    voc = s.vocab
    ok = parse_formula("exists x. !def(inc^-1(x)) & dbl(x) = inc(x)", voc)
    bad = parse_formula("forall x. def(dbl(x))", voc)
    chk = Checker([ok, bad], voc, ["ok", "bad"], backend=backend)
    assert chk.failures(s) == ["bad"]
    assert not chk(s)
    assert chk.values(s) == [True, False]


def test_relativize_guarded_matches_substructure(rng):
    from fospectra.structures import random_structure
    voc = Vocabulary(("R", "P"), ("f",), ())
    phi = parse_formula("forall x. P(x) -> exists y. f(y) = x | f^-1(f(x)) = x", voc)
    for _ in range(60):
        s = random_structure(voc, rng.randint(2, 6), rng)
        if not s.unary["R"]:
            continue
        sub, _ = s.induced(s.unary["R"])
        rel = relativize(phi, "R", voc, guard_terms=True)
        assert evaluate(s, rel) == evaluate(sub, phi)


def test_vocabulary_checks():
    with pytest.raises(VocabularyError):
        Vocabulary(("P",), ("P",), ())
    assert V.issubset(V.extend(unary=("Q",)))
    assert conj() == And(())
