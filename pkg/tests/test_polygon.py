from functools import lru_cache

import pytest
from hypothesis import given, strategies as st

from reflgroupoids import etaseq as E
from reflgroupoids import polygon as P
from reflgroupoids.errors import BoundExceeded, InvalidTriangulation, NotADiagonal
from reflgroupoids.etaseq import DihedralElement
from reflgroupoids.polygon import Triangulation

from conftest import eta_sequences


@lru_cache(maxsize=None)
def catalan(k):
    return 1 if k == 0 else sum(catalan(i) * catalan(k - 1 - i) for i in range(k))


def test_validate_examples():
    assert P.validate_triangulation(Triangulation.make(5, [(1, 3), (1, 4)])).valid
    assert P.validate_triangulation(Triangulation.make(5, [(1, 3), (2, 4)])).reason == "crossing"
    assert P.validate_triangulation(Triangulation.make(4, [])).reason == "diagonal_count"
    assert P.validate_triangulation(Triangulation.make(5, [(1, 2), (1, 4)])).reason == "edge_as_diagonal"
    assert P.validate_triangulation(Triangulation(5, frozenset({(1, 7), (1, 4)}))).reason == "bad_chord"
    assert P.validate_triangulation(Triangulation.make(2, [])).reason == "too_small"


def test_crosses_needs_distinct_endpoints():
    assert P.crosses((1, 3), (2, 4))
    assert not P.crosses((1, 3), (1, 4))
    assert not P.crosses((1, 3), (4, 6))


def test_psi_inverse_examples():
    assert P.psi_inverse(Triangulation.make(3, [])) == (1, 1, 1)
    assert P.psi_inverse(P.fan(5)) == (3, 1, 2, 2, 1)
    assert P.psi_inverse(Triangulation.make(4, [(1, 3)])) == (2, 1, 2, 1)
    with pytest.raises(InvalidTriangulation):
        P.psi_inverse(Triangulation.make(4, []))


def test_psi_examples():
    assert P.psi((1, 1, 1)) == Triangulation.make(3, [])
    t = P.psi((2, 1, 2, 1))
    assert t.sorted_diagonals() == [(1, 3)]


@given(eta_sequences(max_len=11))
def test_psi_round_trip(seq):
    t = P.psi(seq)
    assert P.validate_triangulation(t).valid
    assert P.psi_inverse(t) == seq


@pytest.mark.parametrize("n", range(3, 11))
def test_counts_are_catalan(n):
    tris = P.enumerate_triangulations(n)
    assert len(tris) == catalan(n - 2)
    assert len(set(tris)) == len(tris)
    assert all(P.validate_triangulation(t).valid for t in tris)


def test_small_enumerations():
    assert P.enumerate_triangulations(3) == [Triangulation.make(3, [])]
    assert len(P.enumerate_triangulations(4)) == 2
    assert len(P.enumerate_triangulations(5)) == 5
    with pytest.raises(BoundExceeded):
        P.enumerate_triangulations(20)


def test_flip_examples():
    t = Triangulation.make(4, [(1, 3)])
    assert P.flip(t, (1, 3)).sorted_diagonals() == [(2, 4)]
    with pytest.raises(NotADiagonal):
        P.flip(t, (2, 4))


@given(st.integers(4, 9), st.data())
def test_flip_is_involution(n, data):
    tris = P.enumerate_triangulations(n)
    t = data.draw(st.sampled_from(tris))
    d = data.draw(st.sampled_from(t.sorted_diagonals()))
    u = P.flip(t, d)
    assert P.validate_triangulation(u).valid
    assert P.flip(u, P.flipped_diagonal(t, d)) == t


@pytest.mark.parametrize("n", range(4, 9))
def test_flip_graph_connected(n):
    adj = P.flip_graph(n)
    assert len(adj) == catalan(n - 2)
    assert all(len(nbrs) == n - 3 for nbrs in adj.values())


def test_flip_graph_dot():
    dot = P.flip_graph_dot(5)
    assert dot.startswith("graph flips_5 {") and dot.count(" -- ") == 5


def test_canonical_square():
    a, b = P.enumerate_triangulations(4)
    assert P.canonical_triangulation(a) == P.canonical_triangulation(b)


@pytest.mark.parametrize("n", range(3, 10))
def test_canonical_commutes_with_eta_canonical(n):
    reps = set()
    for t in P.enumerate_triangulations(n):
        c = P.canonical_triangulation(t)
        assert P.psi_inverse(c) == E.canonical_form(P.psi_inverse(t))
        reps.add(c)
    assert len(reps) == len(E.enumerate_sequences(n, canonical=True))


@given(eta_sequences(max_len=9), st.data())
def test_relabel_is_equivariant(seq, data):
    n = len(seq)
    g = data.draw(st.sampled_from(DihedralElement.all(n)))
    assert P.psi_inverse(P.relabel(P.psi(seq), g)) == g.act_on(seq)


def test_json_and_ascii():
    t = P.fan(5)
    assert Triangulation.from_json(t.to_json()) == t
    assert t.to_json() == {"n": 5, "diagonals": [[1, 3], [1, 4]]}
    lines = P.ascii_incidence(t).splitlines()
    assert len(lines) == 5 and lines[0].startswith("  1: 3 triangles")
    assert str(t) == "T5[{1,3}, {1,4}]"
