from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from chanassign.tables import (
    BoundFunction,
    decode,
    encode,
    enumerate_functions,
    full_table_size,
    half_table_size,
    masks_of_size,
    members,
    offsets_of,
)


def test_empty_offset():
    assert encode(BoundFunction(0, ()), 2) == (0, 0)


def test_direct_formula():
    # X = {1, 3} (1-based), f(1) = 2, f(3) = 1, ell = 2
    assert encode(BoundFunction(0b101, (2, 1)), 2) == (0b101, 1)


def test_value_out_of_range():
    with pytest.raises(ValueError):
        encode(BoundFunction(1, (4,)), 2)
    with pytest.raises(ValueError):
        BoundFunction(0b11, (1,))


@pytest.mark.parametrize("mask, ell, count", [(0, 3, 1), (0b11, 1, 4), (0b111, 2, 27)])
def test_enumeration_sizes(mask, ell, count):
    fs = list(enumerate_functions(mask, ell))
    assert len(fs) == count
    assert [encode(f, ell)[1] for f in fs] == list(range(count))


@given(st.integers(0, 63), st.integers(0, 3), st.data())
def test_encode_decode_bijection(mask, ell, data):
    k = len(members(mask))
    vals = tuple(data.draw(st.lists(st.integers(1, ell + 1), min_size=k, max_size=k)))
    bf = BoundFunction(mask, vals)
    assert decode(*encode(bf, ell), ell) == bf


def test_vectorized_offsets_match():
    digits = np.array([[0, 1, 2], [2, 2, 2], [1, 0, 0]])
    got = offsets_of(digits, 3).tolist()
    want = [encode(BoundFunction(0b111, tuple(int(d) + 1 for d in row)), 2)[1] for row in digits]
    assert got == want


def test_masks_ascending():
    ms = masks_of_size(5, 2)
    assert list(ms) == sorted(ms) and len(ms) == comb(5, 2)


@pytest.mark.parametrize("n", range(0, 10))
@pytest.mark.parametrize("ell", range(0, 4))
def test_size_closed_forms(n, ell):
    assert full_table_size(n, ell) == sum(comb(n, i) * (ell + 1) ** i for i in range(n + 1))
    assert half_table_size(n, ell) == sum(comb(n, i) * (ell + 1) ** i for i in range(n // 2 + 1))


def test_bound_function_helpers():
    bf = BoundFunction.from_dict({4: 2, 1: 3})
    assert bf.subset == 0b10010 and bf.values == (3, 2)
    assert bf.as_dict() == {1: 3, 4: 2}
    assert BoundFunction.constant(0b1011).values == (1, 1, 1)
