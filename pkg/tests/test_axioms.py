import pytest

from fospectra.axioms import (
    axiom_set, binary_set, composite_set, fib_set, phi_M, phi_M_set, powers_set, queue_set, tm_set,
)
from fospectra.generators import (
    binary_rep_structure, fibonacci_structure, multiplication_structure, powers_structure, spiral,
)
from fospectra.logic import evaluate, quantifier_depth
from fospectra.machines.queue import encode_queue_trace, queue_run
from fospectra.machines.samples import SAMPLE_MACHINES, fibonacci_queue_machine
from fospectra.machines.tm import encode_trace, tm_search
from fospectra.spectrum import enumerate_models
from fospectra.structures import FiniteStructure


@pytest.mark.parametrize("n", [2, 3, 7, 16, 33])
def test_generators_satisfy_axioms(n, backend):
    assert phi_M_set().checker(backend)(spiral(n))
    assert powers_set().checker(backend)(powers_structure(n)) == (n & (n - 1) == 0)
    assert binary_set().checker(backend)(binary_rep_structure(n))
    fib = {2, 3, 5, 8, 13, 21}
    assert fib_set().checker(backend)(fibonacci_structure(n)) == (n in fib)
    assert fib_set(True).checker(backend)(fibonacci_structure(n, True)) == (n in fib)


def test_composite_example():
    chk = composite_set().checker()
    assert chk(multiplication_structure(12, 3))
    assert not chk(multiplication_structure(12, 5))
    assert not chk(multiplication_structure(12, 12))


def test_phi_M_fails_on_perturbed_spiral():
    s = spiral(6)
    bad = FiniteStructure(6, s.vocab, {}, {"inc": s.pif["inc"], "dbl": {1: 2, 2: 4, 3: 5}}, {})
    assert phi_M_set().checker().failures(bad)
    assert evaluate(spiral(2), phi_M())


def test_literal_phi_M_has_a_cycle_model():
    """The five defining conditions alone allow an extra fixed point."""
    voc = phi_M_set().vocab
    odd = FiniteStructure(3, voc, {}, {"inc": {1: 2, 3: 3}, "dbl": {1: 2, 3: 3}}, {})
    assert phi_M_set(literal=True).checker()(odd)
    assert phi_M_set().checker().failures(odd) == ["odd-between"]
    count, _, _ = enumerate_models(phi_M(literal=True), voc, 3)
    assert count > 6  # 3! labellings of the chain, plus the cycle models


def test_phi_M_has_no_model_of_size_one():
    a = phi_M_set()
    assert enumerate_models(a.formula, a.vocab, 1)[0] == 0


def test_axiom_set_lookup():
    assert axiom_set("fib-planar").name == "fib-planar"
    with pytest.raises(ValueError, match="unknown axiom family"):
        axiom_set("nope")
    assert quantifier_depth(phi_M()) <= 3


@pytest.mark.parametrize("name", sorted(SAMPLE_MACHINES))
def test_tm_encoding_satisfies_axioms(name):
    factory, word = SAMPLE_MACHINES[name]
    m = factory()
    trace = tm_search(m, word, 60)
    for exact in (False, True):
        s = encode_trace(trace, exact_four=exact)
        chk = tm_set(m, word, exact_four=exact).checker()
        assert chk.failures(s) == []


def test_tm_axioms_reject_other_word():
    m, word = SAMPLE_MACHINES["two-sweeps"][0](), "110"
    s = encode_trace(tm_search(m, word, 60))
    assert not tm_set(m, "011").checker()(s)


def test_queue_encoding_satisfies_axioms():
    m = fibonacci_queue_machine()
    res = queue_run(m, "A", 40)
    chk = queue_set(m, "A").checker()
    for n in res.lengths:
        s = encode_queue_trace(res.witnesses[n])
        assert chk.failures(s) == []
        # breaking the read/write link is noticed
        rw = dict(s.pif["rw"])
        a = min(rw)
        del rw[a]
        broken = FiniteStructure(s.size, s.vocab, s.unary, {**s.pif, "rw": rw}, {})
        assert not chk(broken)
