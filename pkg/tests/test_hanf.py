import pytest

from fospectra.hanf import (
    ROOT, DegreeError, ball, ball_bound, canonical_type, hanf_equivalent, moore_bound,
    neighborhood, type_census,
)
from fospectra.logic import Vocabulary, VocabularyError
from fospectra.structures import (
    FiniteStructure, cycle_structure, disjoint_union, path_structure, random_structure,
)

C6, C12 = cycle_structure(6), cycle_structure(12)
TWO_C6 = disjoint_union(C6, C6)


def test_cycles():
    assert hanf_equivalent(TWO_C6, C12, 1, 20, 2)
    assert hanf_equivalent(TWO_C6, C12, 2, 20, 2)
    assert not hanf_equivalent(TWO_C6, C12, 3, 20, 2)


def test_bounds():
    assert ball_bound(3, 1) == 4 and ball_bound(3, 2) == 7
    assert moore_bound(3, 2) == 10 and moore_bound(2, 5) == 11
    assert ball_bound(0, 4) == moore_bound(0, 4) == 1


def test_ball_and_neighborhood():
    p = path_structure(7)
    assert ball(p, 4, 2) == [2, 3, 4, 5, 6]
    nb = neighborhood(p, 1, 1)
    assert nb.size == 2 and nb.constants[ROOT] == 1


def test_canonical_type_is_invariant(rng):
    voc = Vocabulary(("P",), ("f", "g"), ())
    for _ in range(40):
        s = random_structure(voc, rng.randint(2, 8), rng, density=0.5)
        perm = list(s.elements)
        rng.shuffle(perm)
        m = dict(zip(s.elements, perm))
        t = s.relabel(m)
        for v in s.elements:
            a = canonical_type(neighborhood(s, v, 2))
            b = canonical_type(neighborhood(t, m[v], 2))
            assert a == b and a.digest() == b.digest()


def test_census_cap_and_merge():
    c = type_census(C12, 1, 5, 2)
    assert [k for _, k in c.counts] == [5]
    assert type_census(C6, 1, 5, 2).merge(type_census(C6, 1, 5, 2)) == c
    assert c.lines()[0].startswith("type ") and c.lines()[0].endswith(" count 5")


def test_errors():
    with pytest.raises(DegreeError):
        type_census(C6, 1, 3, 1)
    bad = FiniteStructure(2, Vocabulary((), ("f",), (ROOT,)), {}, {"f": {1: 2}}, {ROOT: 1})
    with pytest.raises(VocabularyError):
        neighborhood(bad, 1, 1)
    with pytest.raises(VocabularyError):
        hanf_equivalent(C6, disjoint_union(path_structure(3), path_structure(3)).expand(
            unary={"U": set()}), 1, 2, 2)
