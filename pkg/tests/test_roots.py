from math import gcd

import pytest
from hypothesis import given, strategies as st

from reflgroupoids import roots as R
from reflgroupoids.errors import InvalidPosition, NotARoot, RootOrderTie
from reflgroupoids.groupoid import scheme_from_eta

from conftest import eta_sequences

B2 = ((0, 1), (1, 2), (1, 1), (1, 0))
C2 = ((0, 1), (1, 1), (2, 1), (1, 0))
PENTAGON = sorted([
    ((0, 1), (1, 3), (1, 2), (1, 1), (1, 0)),
    ((0, 1), (1, 1), (2, 1), (3, 1), (1, 0)),
    ((0, 1), (1, 2), (2, 3), (1, 1), (1, 0)),
    ((0, 1), (1, 2), (1, 1), (2, 1), (1, 0)),
    ((0, 1), (1, 1), (3, 2), (2, 1), (1, 0)),
])


def test_leq_examples():
    assert R.leq_Q((0, 1), (1, 1))
    assert R.leq_Q((1, 2), (1, 1))
    assert not R.leq_Q((1, 0), (1, 1))


def test_sort_tie():
    with pytest.raises(RootOrderTie):
        R.sort_roots([(1, 1), (2, 2)])


def test_mediant_examples():
    assert R.mediant_insert(R.BASE_ROOTS, 1) == B2
    assert R.mediant_insert(R.BASE_ROOTS, 2) == C2
    with pytest.raises(InvalidPosition):
        R.mediant_insert(R.BASE_ROOTS, 3)


def test_validate_examples():
    rep = R.validate_F(R.BASE_ROOTS)
    assert rep.valid and rep.witness == []
    assert R.validate_F(((0, 1), (1, 3), (1, 2), (1, 1), (1, 0))).valid
    assert R.validate_F(((0, 1), (2, 1), (1, 1), (1, 0))).reason == "not_ascending"
    assert R.validate_F(((0, 1), (1, 0))).reason == "too_short"
    assert R.validate_F(((0, 1), (2, 2), (1, 0))).reason == "not_primitive"
    assert R.validate_F(((0, 1), (1, 2), (1, 0))).reason == "not_unimodular"
    assert R.validate_F(((1, 1), (1, 2), (1, 0))).reason == "endpoints"


@given(st.lists(st.integers(1, 30), max_size=12))
def test_random_mediant_chains_are_F(picks):
    rs = R.BASE_ROOTS
    for p in picks:
        rs = R.mediant_insert(rs, p % (len(rs) - 1) + 1)
    rep = R.validate_F(rs)
    assert rep.valid and len(rep.witness) == len(picks)
    assert all(gcd(*v) == 1 for v in rs)


def test_roots_examples():
    s = scheme_from_eta((1, 1, 1))
    assert all(r == R.BASE_ROOTS for r in R.root_sets(s))
    assert all(r == B2 for r in R.root_sets(scheme_from_eta((2, 1, 2, 1))))
    assert all(r == C2 for r in R.root_sets(scheme_from_eta((1, 2, 1, 2))))


def test_pentagon_multiset():
    sets = R.root_sets(scheme_from_eta((3, 1, 2, 2, 1)))
    assert sorted(sets) == sorted(PENTAGON * 2)


@given(eta_sequences(max_len=9))
def test_closure_matches_reflection_words(seq):
    assert R.roots_from_scheme(scheme_from_eta(seq), 1) == R.roots_by_words(seq)


@given(eta_sequences(max_len=9))
def test_root_count_and_F(seq):
    for rs in R.roots_of_sequence(seq):
        assert len(rs) == len(seq)
        assert R.validate_F(rs).valid
        assert R.is_unimodular_chain(rs)


def test_sum_of_two_examples():
    assert R.sum_of_two(R.BASE_ROOTS, (1, 1)) in (((0, 1), (1, 0)), ((1, 0), (0, 1)))
    pent = ((0, 1), (1, 3), (1, 2), (1, 1), (1, 0))
    assert R.sum_of_two(pent, (1, 3)) == ((0, 1), (1, 2))
    assert R.sum_of_two(pent, (0, 1)) == "simple"
    with pytest.raises(NotARoot):
        R.sum_of_two(pent, (2, 1))


def test_json():
    assert R.roots_to_json(1, R.BASE_ROOTS) == {"object": 1, "roots": [[0, 1], [1, 1], [1, 0]]}
