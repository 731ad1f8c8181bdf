from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chanassign.model import ChannelInstance, evaluate_assignment
from chanassign.oracles import bf_span
from chanassign.span_dp import build_half_table, dp_span
from chanassign.span_mim import (
    complement_f,
    glue_witness,
    mim_merge,
    mim_run,
    mim_solve,
    mim_span,
    pad_even,
)
from chanassign.tables import BoundFunction, enumerate_functions, masks_of_size

from conftest import K2, instances


def test_complement_examples():
    inst = K2(2)
    assert complement_f(inst, BoundFunction(0b01, (1,))) == BoundFunction(0b10, (3,))
    assert complement_f(inst, BoundFunction(0b01, (2,))).values == (2,)
    assert complement_f(ChannelInstance(2), BoundFunction(0b01, (1,))).values == (1,)


def test_mim_examples():
    assert mim_span(K2(2)) == 3
    assert mim_span(K2(3)) == 4
    res = mim_run(K2(2))
    assert res.best.X == 0b01 and res.best.f.values == (1,)
    assert glue_witness(res).colors == (1, 3)
    assert mim_solve(ChannelInstance(2))[1].colors == (1, 1)


def test_solve_k2w3_witness():
    span, a, _ = mim_solve(K2(3))
    assert span == 4 and sorted(a.colors) == [1, 4]


def test_odd_vertex_count_is_padded():
    inst = ChannelInstance(3, ((0, 1, 2), (1, 2, 1)))
    res = mim_run(inst)
    assert res.padded.n == 4
    span, a, _ = mim_solve(inst)
    assert len(a) == 3 and span == bf_span(inst)


def test_merge_needs_even_n():
    inst = ChannelInstance(3)
    with pytest.raises(ValueError):
        mim_merge(inst, build_half_table(inst))


@pytest.mark.parametrize("n", [2, 4, 6, 8])
@pytest.mark.parametrize("ell", [1, 2, 3])
def test_candidate_count(n, ell):
    inst = ChannelInstance(n, ((0, 1, ell),))
    _, count = mim_merge(inst, build_half_table(inst))
    assert count == comb(n, n // 2) * (ell + 1) ** (n // 2)


def test_threads_agree():
    inst = ChannelInstance(8, tuple((u, v, 1 + (u * v) % 3) for u in range(8) for v in range(u + 1, 8) if (u + v) % 3))
    one, many = mim_run(inst), mim_run(inst, threads=4)
    assert one.span == many.span and one.best == many.best


@given(instances(max_n=7))
def test_mim_matches_oracle_and_witness(inst):
    span, a, _ = mim_solve(inst)
    assert span == bf_span(inst) == dp_span(inst)
    rep = evaluate_assignment(inst, a)
    assert rep.proper and rep.span == span


@given(instances(max_n=7))
def test_padding_neutral(inst):
    assert mim_span(inst.with_isolated_vertex()) == mim_span(inst)


@given(instances(min_n=2, max_n=6), st.data())
def test_one_sided_merge_bound(inst, data):
    padded = pad_even(inst)
    table = build_half_table(padded)
    opt = dp_span(inst)
    n, h = padded.n, padded.n // 2
    X = data.draw(st.sampled_from(masks_of_size(n, h)))
    f = data.draw(st.sampled_from(list(enumerate_functions(X, padded.ell))))
    fbar = complement_f(padded, f)
    assert table[f] + table[fbar] - 1 >= opt
