import warnings

import pytest

from fospectra.generators import (
    binary_bits, binary_rep_structure, fibonacci_map, fibonacci_structure, forcing_grid,
    forcing_values, multiplication_structure, powers_structure, reconstruct_value, spiral,
)
from fospectra.structures import StructureError, max_degree


def test_spiral():
    s = spiral(8)
    assert s.pif["inc"][7] == 8 and 8 not in s.pif["inc"]
    assert s.pif["dbl"] == {1: 2, 2: 4, 3: 6, 4: 8}
    with pytest.raises(StructureError):
        spiral(1)


def test_powers():
    assert powers_structure(16).unary["P"] == {1, 2, 4, 8, 16}


def test_multiplication():
    s = multiplication_structure(12, 3)
    assert s.pif["mulc"][2] == 6 and s.pif["mulc"][4] == 12 and 5 not in s.pif["mulc"]
    assert s.pif["addc"][9] == 12 and 10 not in s.pif["addc"]
    assert max_degree(s) <= 8
    with pytest.raises(StructureError):
        multiplication_structure(5, 7)


def test_fibonacci():
    fmap = fibonacci_map(21)
    assert [fmap[k] for k in (1, 2, 3, 5, 8, 13)] == [2, 3, 5, 8, 13, 21]
    s = fibonacci_structure(21)
    assert s.unary["Phi"] == {1, 2, 3, 5, 8, 13, 21}
    assert "dbl" not in fibonacci_structure(21, planar_variant=True).vocab.pifs


def test_binary():
    s = binary_rep_structure(13)
    assert s.pif["P"] == {1: 13, 2: 6, 3: 3, 4: 1}
    assert binary_bits(s) == "1101"
    assert max_degree(s) <= 6


def test_forcing_grid_example():
    v, f, top = forcing_values(100, 11)
    assert top == 6 and v[50] == 3
    # L_6 is [32, 63]; its values sum to N + 1
    assert sum(v[x] for x in range(32, 64)) == 101
    s, view = forcing_grid(100, 11)
    assert reconstruct_value(view, 11) == 101
    assert view.width * view.height <= 100
    assert (view.width, view.height) == (4, 2)


def test_forcing_grid_warns_for_small_base():
    with pytest.warns(UserWarning):
        forcing_grid(20, 5)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        forcing_grid(20, 11)
