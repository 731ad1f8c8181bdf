from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chanassign.model import FormatError
from chanassign.oracles import bf_setcover_positive, bf_tcolor_decide
from chanassign.tcoloring import (
    SetCoverInstance,
    TColoringInstance,
    canonical_ranges,
    domset_to_setcover,
    encode_cover,
    forbidden_set,
    index_of_witness,
    parse_setcover,
    parse_tcoloring,
    predicted_span,
    predicted_vertex_count,
    reduce_setcover_to_tcoloring,
    serialize_setcover,
    serialize_tcoloring,
    small_setcover_family,
    structural_violations,
    subset_of_color,
    witness_of_index,
)

S = frozenset


def one_set(k):
    return SetCoverInstance(1, (S({1}),), k)


def test_witness_indexing():
    assert witness_of_index(1, 3, 2) == (1, 1)
    assert witness_of_index(4, 3, 2) == (2, 1)
    assert witness_of_index(9, 3, 2) == (3, 3)
    for i in range(1, 28):
        assert index_of_witness(witness_of_index(i, 3, 3), 3, 3) == i
    with pytest.raises(ValueError):
        witness_of_index(10, 3, 2)


def test_subset_of_color():
    assert subset_of_color(1, 2) == S()
    assert subset_of_color(2, 2) == S({1})
    assert subset_of_color(4, 2) == S({1, 2})
    with pytest.raises(ValueError):
        subset_of_color(5, 2)


def test_forbidden_set_examples():
    assert forbidden_set(one_set(1), 1, 1, 1, 1) == S({1})
    sc = SetCoverInstance(2, (S({1}), S({2}), S({1, 2})), 1)
    # witness (3,) lies in group 2 only
    assert forbidden_set(sc, 2, 1, 1, 3) == S()
    # witness (1, 2) needs both sets of group 1 -> only color 4 survives
    assert forbidden_set(sc, 2, 2, 1, index_of_witness((1, 2), 3, 2)) == S({1, 2, 3})


def test_worked_example():
    tc, rep = reduce_setcover_to_tcoloring(one_set(1), 1, 1)
    assert tc.n == 5 and tc.s == 12 and rep.q == 4
    assert rep.allowed[rep.witness_vertex(1)] == S({3})
    forb = tc.forbidden_sets()
    assert forb[(rep.set_vertex(1), rep.witness_vertex(1))] == S({2})
    assert rep.slot_color(1, 0) == 5
    assert rep.free_space == (11, 12)
    assert tc.is_proper((1, 12, 2, 3, 11))
    sat, a = bf_tcolor_decide(tc)
    assert sat and tc.is_proper(a.colors)
    assert encode_cover(one_set(1), rep, [1]) == (1, 12, 2, 3, 11)


def test_worked_example_k0_is_unsat():
    tc, rep = reduce_setcover_to_tcoloring(one_set(0), 1, 1)
    assert rep.free_space[0] > rep.free_space[1]
    assert bf_tcolor_decide(tc) == (False, None)


@pytest.mark.parametrize("k", range(4))
def test_sizes_for_four_sets_four_elements(k):
    sets = (S({1, 2}), S({3}), S({4}), S({1, 4}))
    sc = SetCoverInstance(4, sets, k)
    tc, rep = reduce_setcover_to_tcoloring(sc, 2, 2)
    assert rep.vertex_count == tc.n == 10 == predicted_vertex_count(4, 4, 2, 2)
    assert rep.s == tc.s == 88 + 2 * k == predicted_span(4, k, 2, 2)
    assert structural_violations(sc, tc, rep) == []


def test_literal_construction_has_false_positive():
    sc = SetCoverInstance(2, (S({1}), S({2})), 1)
    assert not bf_setcover_positive(sc)
    literal, _ = reduce_setcover_to_tcoloring(sc, 2, 1, literal=True)
    assert bf_tcolor_decide(literal)[0]
    fixed, _ = reduce_setcover_to_tcoloring(sc, 2, 1)
    assert not bf_tcolor_decide(fixed)[0]


def test_parameter_checks():
    sc = SetCoverInstance(2, (S({1}), S({2})), 1)
    for A, B in [(0, 1), (3, 1), (1, 0), (1, 3), (1.5, 1)]:
        with pytest.raises(ValueError):
            reduce_setcover_to_tcoloring(sc, A, B)


def test_partial_group_restricts_last_set_vertex():
    sc = SetCoverInstance(3, (S({1}), S({2}), S({3})), 2)
    tc, rep = reduce_setcover_to_tcoloring(sc, 2, 2)
    assert rep.allowed[rep.set_vertex(2)] == S({1, 2})


def test_domset_examples():
    tri = domset_to_setcover(3, [(1, 2), (2, 3), (1, 3)], 1)
    assert tri.sets == (S({1, 2, 3}),) * 3 and bf_setcover_positive(tri)
    empty = domset_to_setcover(3, [], 2)
    assert empty.sets == (S({1}), S({2}), S({3})) and not bf_setcover_positive(empty)
    p3 = domset_to_setcover(3, [(1, 2), (2, 3)], 1)
    assert p3.sets == (S({1, 2}), S({1, 2, 3}), S({2, 3})) and bf_setcover_positive(p3)


def test_setcover_format():
    assert parse_setcover("p sc 1 1 1\ns 1\n") == one_set(1)
    for bad in ["p sc 2 1 1\ns 1\n", "p sc 1 2 1\ns 1\n", "s 1\n", "p sc 1 1 1\ns 2\n"]:
        with pytest.raises(FormatError):
            parse_setcover(bad)
    sc = SetCoverInstance(3, (S({1, 3}), S({2})), 2)
    assert parse_setcover(serialize_setcover(sc)) == sc


def test_tcoloring_format():
    tc = parse_tcoloring("p tc 3 12\ne 1 2 0-10\ne 2 3 4 6-7\n")
    assert tc.forbidden_sets()[(0, 1)] == S(range(11))
    assert tc.forbidden_sets()[(1, 2)] == S({4, 6, 7})
    for bad in ["p tc 2 3\ne 1 2 3\n", "p tc 2 3\ne 1 1 0\n", "p tc 2 3\ne 1 2 2-1\n", "e 1 2 0\n"]:
        with pytest.raises(FormatError):
            parse_tcoloring(bad)


def test_round_trip_on_generated_instance():
    tc, _ = reduce_setcover_to_tcoloring(one_set(1), 1, 1)
    text = serialize_tcoloring(tc)
    again = parse_tcoloring(text)
    assert again == tc and serialize_tcoloring(again) == text


def test_canonical_ranges():
    assert canonical_ranges([5, 1, 2, 3, 7, 6]) == ((1, 3), (5, 7))
    assert canonical_ranges([]) == ()


@given(st.integers(1, 6), st.integers(1, 12), st.data())
def test_tcoloring_text_round_trip(n, s, data):
    t = {}
    for u in range(n):
        for v in range(u + 1, n):
            ds = data.draw(st.sets(st.integers(0, s - 1), max_size=4))
            if ds:
                t[(u, v)] = ds
    tc = TColoringInstance.from_sets(n, s, t)
    assert parse_tcoloring(serialize_tcoloring(tc)) == tc


def _cases():
    fam = small_setcover_family()
    return [(n, sets, k) for n, sets in fam for k in range(4)]


@given(st.sampled_from(_cases()), st.sampled_from([(1, 1), (1, 2), (2, 1), (2, 2)]))
def test_structure_and_encoded_covers(case, AB):
    n, sets, k = case
    A, B = AB
    if A > len(sets) or B > n:
        return
    sc = SetCoverInstance(n, sets, k)
    tc, rep = reduce_setcover_to_tcoloring(sc, A, B)
    assert structural_violations(sc, tc, rep) == []
    universe = S(range(1, n + 1))
    for size in range(min(k, len(sets)) + 1):
        for cover in combinations(range(1, len(sets) + 1), size):
            if S().union(*(sets[i - 1] for i in cover)) == universe:
                assert tc.is_proper(encode_cover(sc, rep, cover))


def test_family_size():
    fam = small_setcover_family()
    assert len(fam) >= 40
    assert all(len(sets) <= 3 and n <= 3 for n, sets in fam)
