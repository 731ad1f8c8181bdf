import pytest
from hypothesis import given
from hypothesis import strategies as st

from chanassign.model import BudgetExceeded, ChannelInstance
from chanassign.oracles import bf_count, bf_count_profile
from chanassign.span_count import (
    _merge_profile,
    build_count_table,
    count,
    count_at_most,
    count_exact_span,
    count_profile,
    derive_fv_count,
    f_down,
    f_tilde,
    q_star,
    q_star_at_most,
)
from chanassign.tables import BoundFunction

from conftest import K2, instances


def test_derive_fv_count_examples():
    assert derive_fv_count(K2(1), BoundFunction(0b11, (1, 1)), 0).values == (2,)
    assert derive_fv_count(ChannelInstance(2), BoundFunction(0b11, (1, 1)), 1).values == (2,)
    inst = ChannelInstance(3, ((1, 2, 2),))
    assert derive_fv_count(inst, BoundFunction(0b111, (1, 1, 2)), 1).values == (2, 3)


def test_f_down_examples():
    assert f_down(BoundFunction(0b11, (3, 1))).values == (2, 1)
    assert f_down(BoundFunction(0b11, (1, 1))).values == (1, 1)
    assert f_down(BoundFunction(0b11, (2, 2))).values == (1, 1)


def test_q_table_example():
    t = build_count_table(ChannelInstance(4, ((0, 1, 1),)), 3)
    assert t[BoundFunction(0b11, (1, 1)), 2] == 2
    assert t[BoundFunction(0, ()), 1] == 1 and t[BoundFunction(0, ()), 2] == 0


def test_q_star_cases():
    inst = ChannelInstance(2, ((0, 1, 1),))
    t = build_count_table(inst, 4)
    assert q_star(inst, BoundFunction(0b11, (1, 1)), 2, t) == 0
    single = ChannelInstance(2)
    ts = build_count_table(single, 4)
    assert q_star(single, BoundFunction(0b01, (1,)), 1, ts) == 1
    assert q_star(single, BoundFunction(0b01, (1,)), 2, ts) == 1


def test_f_tilde_isolated_below_top_one():
    inst = ChannelInstance(4)
    ft = f_tilde(inst, BoundFunction(0b1100, (1, 1)))
    assert ft.values == (2, 2)
    with pytest.raises(ValueError):
        f_tilde(inst, BoundFunction(0b1100, (2, 2)))


def test_literal_pinned_count_overcounts():
    # The exact-top-color pinned count gives 4 for K2, w=1, s=4; the truth is 6.
    inst = K2(1)
    t = build_count_table(inst, 4)
    literal = _merge_profile(inst, t, lambda i, f, tb: [q_star(i, f, r, tb) for r in range(tb.s + 1)])
    assert literal[4] == 4
    assert bf_count(inst, 4, "exact") == 6 == count_exact_span(inst, 4)


def test_q_star_at_most_is_cumulative():
    inst = ChannelInstance(4, ((0, 1, 1), (1, 2, 2)))
    t = build_count_table(inst, 6)
    f = BoundFunction(0b0011, (1, 3))
    vals = [q_star_at_most(inst, f, r, t) for r in range(7)]
    assert vals == sorted(vals)


@pytest.mark.parametrize(
    "inst, s, exact, at_most",
    [
        (K2(1), 2, 2, 2),
        (ChannelInstance(2), 1, 1, 1),
        (ChannelInstance(2), 2, 3, 4),
        (K2(2), 2, 0, 0),
    ],
)
def test_count_examples(inst, s, exact, at_most):
    assert count_exact_span(inst, s) == exact
    assert count_at_most(inst, s) == at_most
    assert count(inst, s).at_most == at_most


def test_single_vertex_every_span():
    assert count_profile(ChannelInstance(1), 6) == [1] * 6


def test_empty_graph():
    assert count_profile(ChannelInstance(0), 3) == [1, 0, 0]


def test_budget():
    with pytest.raises(BudgetExceeded):
        build_count_table(ChannelInstance(6, ((0, 1, 2),)), 5, max_entries=100)
    with pytest.raises(ValueError):
        count_profile(K2(1), 0)


@given(instances(max_n=5, max_w=2), st.integers(1, 6))
def test_profile_matches_oracle(inst, s):
    assert count_profile(inst, s) == bf_count_profile(inst, s)


@given(st.integers(1, 6), st.integers(1, 10))
def test_edgeless_closed_form(n, s):
    inst = ChannelInstance(n)
    assert count_exact_span(inst, s) == s**n - (s - 1) ** n
    assert count_at_most(inst, s) == s**n


@given(instances(max_n=5, max_w=2), st.integers(2, 6))
def test_exact_is_difference(inst, s):
    assert count_exact_span(inst, s) == count_at_most(inst, s) - count_at_most(inst, s - 1) >= 0


@given(instances(min_n=1, max_n=5, max_w=2), st.integers(1, 6))
def test_padded_divisibility(inst, s):
    padded_total = sum(count_profile(inst.with_isolated_vertex(), s))
    assert padded_total % s == 0
    assert padded_total // s == count_at_most(inst, s)


def test_large_counts_are_exact():
    inst = ChannelInstance(6)
    assert count_at_most(inst, 40) == 40**6
