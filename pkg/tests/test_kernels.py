"""The Cython kernel and its pure-Python twin must agree everywhere."""

import numpy as np
import pytest

from fospectra._kernels import BACKENDS, compile_formulas, make_kernel
from fospectra.axioms import phi_M_set, powers_set
from fospectra.generators import powers_structure, spiral
from fospectra.logic import Vocabulary, parse_formula
from fospectra.spectrum import enumerate_models
from fospectra.structures import random_structure

needs_both = pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernel not built")

VOC = Vocabulary(("P",), ("f", "g"), ("c",))
SENTENCES = [
    "forall x. def(f(x)) -> P(f(x)) | g(x) = c",
    "exists x y. x != y & f(x) = y & !def(g^-1(y))",
    "forall x. exists y. f(y) = x <-> P(x)",
    "forall x. (P(x) -> def(g(x))) & (def(g(g(x))) -> x = c)",
    "exists x. f^-1(x) = g(x) | !(forall y. y = x)",
]


def test_unknown_backend():
    prog = compile_formulas([parse_formula("true", VOC)], VOC)
    with pytest.raises(ValueError):
        make_kernel(prog, "fortran")


@needs_both
def test_evaluation_agrees(rng):
    phis = [parse_formula(t, VOC) for t in SENTENCES]
    prog = compile_formulas(phis, VOC)
    kernels = [make_kernel(prog, b) for b in ("python", "cython")]
    for _ in range(300):
        s = random_structure(VOC, rng.randint(1, 7), rng)
        vals = []
        for k in kernels:
            k.set_structure(s.size, *s.arrays)
            vals.append([bool(k.evaluate(i)) for i in range(len(phis))])
        assert vals[0] == vals[1]


@needs_both
@pytest.mark.parametrize("n", [3, 4])
def test_enumeration_agrees(n):
    a = phi_M_set()
    py = enumerate_models(a.formula, a.vocab, n, backend="python")
    cy = enumerate_models(a.formula, a.vocab, n, backend="cython")
    assert py[0] == cy[0] and py[2] == cy[2]
    assert [m.key() for m in py[1]] == [m.key() for m in cy[1]]


def test_checker_on_generator(backend):
    a = powers_set()
    chk = a.checker(backend)
    assert chk(powers_structure(16))
    assert not chk(spiral(16).expand(unary={"P": {1, 2, 4, 8}}))


def test_arrays_shape():
    s = powers_structure(5)
    fwd, inv, un, consts = s.arrays
    assert fwd.shape == (2, 6) and inv.shape == (2, 6) and un.shape == (1, 6)
    assert fwd.dtype == np.int32 and fwd[0, 1] == 2 and inv[1, 4] == 2
