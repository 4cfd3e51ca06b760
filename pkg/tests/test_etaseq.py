import json
import logging
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from reflgroupoids import etaseq as E
from reflgroupoids.errors import BoundExceeded, InvalidPosition, InvalidSequence, NotContractible
from reflgroupoids.etaseq import DihedralElement, SymmetryType
from reflgroupoids.exact import IDENTITY, eta

from conftest import eta_sequences


def brute_force(n):
    """Positive n-tuples with entry sum 3(n-2) whose eta-product is -id and partial columns are >= 0."""
    total = 3 * (n - 2)
    out = []
    for cuts in combinations(range(1, total), n - 1):
        bounds = (0,) + cuts + (total,)
        seq = tuple(b - a for a, b in zip(bounds, bounds[1:]))
        M, ok = IDENTITY, True
        for k, c in enumerate(seq, 1):
            M = M @ eta(c)
            if k < n and (M.a11 < 0 or M.a21 < 0):
                ok = False
        if ok and M == -IDENTITY:
            out.append(seq)
    return sorted(out)


@pytest.mark.parametrize("seq", [(1, 1, 1), (2, 1, 2, 1), (1, 2, 1, 2), (3, 1, 2, 2, 1)])
def test_valid_examples(seq):
    assert E.validate(seq).valid


@pytest.mark.parametrize("seq, reason", [
    ((1, 1), "eta_product"),
    ((), "empty"),
    ((1, 0, 1), "nonpositive_entry"),
    ((2, 2, 2), "eta_product"),
    ((1, 1, 1, 1), "eta_product"),
])
def test_invalid_examples(seq, reason):
    report = E.validate(seq)
    assert not report.valid and report.reason == reason


def test_non_integer_rejected():
    assert E.validate((1, 1.0, 1)).reason == "not_integer"


def test_first_column_separating_example(caplog):
    # nine ones multiply to -id (eta(1) has order 6 up to sign) yet fail the column condition
    with caplog.at_level(logging.WARNING):
        report = E.validate((1,) * 9)
    assert report.reason == "first_column"
    assert "first-column" in caplog.text


def test_require_valid_raises():
    with pytest.raises(InvalidSequence):
        E.require_valid((1, 1))


def test_expand_examples():
    assert E.expand((1, 1, 1), 1) == (2, 1, 2, 1)
    for gap in range(1, 5):
        s = E.expand((2, 1, 2, 1), gap)
        assert len(s) == 5 and sum(s) == 9 and E.is_valid(s)
    with pytest.raises(InvalidPosition):
        E.expand((1, 1, 1), 4)


def test_contract_examples():
    assert E.contract((2, 1, 2, 1), 2) == (1, 1, 1)
    with pytest.raises(NotContractible):
        E.contract((1, 1, 1), 1)
    with pytest.raises(NotContractible):
        E.contract((2, 1, 2, 1), 1)
    with pytest.raises(InvalidPosition):
        E.contract((2, 1, 2, 1), 9)


@given(eta_sequences(), st.data())
def test_expand_contract_inverse(seq, data):
    gap = data.draw(st.integers(1, len(seq)))
    grown = E.expand(seq, gap)
    assert E.is_valid(grown)
    assert E.contract(grown, gap + 1) == seq


def test_reduce_examples():
    assert E.reduce_to_base((1, 1, 1)) == []
    assert len(E.reduce_to_base((2, 1, 2, 1))) == 1


@pytest.mark.parametrize("n", range(4, 11))
def test_reduce_every_sequence(n):
    for seq in E.enumerate_sequences(n, canonical=n > 8):
        chain = E.reduce_to_base(seq)
        assert len(chain) == n - 3
        cur = seq
        for op, pos in chain:
            assert op == "contract"
            cur = E.contract(cur, pos)
        assert cur == E.BASE


def test_canonical_examples():
    assert E.canonical_form((1, 2, 1, 2)) == E.canonical_form((2, 1, 2, 1))
    assert E.canonical_form((1, 1, 1)) == (1, 1, 1)


@given(eta_sequences(), st.integers(0, 20), st.booleans())
def test_canonical_is_orbit_invariant(seq, k, rev):
    img = E.rotate(seq[::-1] if rev else seq, k)
    assert E.canonical_form(img) == E.canonical_form(seq)
    assert E.canonical_form(E.canonical_form(seq)) == E.canonical_form(seq)


@pytest.mark.parametrize("n, raw, canon", [(3, 1, 1), (4, 2, 1), (5, 5, 1), (6, 14, 3)])
def test_enumerate_counts(n, raw, canon):
    assert len(E.enumerate_sequences(n)) == raw
    assert len(E.enumerate_sequences(n, canonical=True)) == canon


def test_enumerate_n4_exact():
    assert E.enumerate_sequences(4) == [(1, 2, 1, 2), (2, 1, 2, 1)]


@pytest.mark.parametrize("n", range(3, 9))
def test_enumeration_matches_brute_force_and_expansion(n):
    seqs = E.enumerate_sequences(n)
    assert seqs == brute_force(n)
    assert seqs == E.enumerate_by_expansion(n)


def test_enumeration_bound():
    with pytest.raises(BoundExceeded):
        E.enumerate_sequences(2)
    with pytest.raises(BoundExceeded):
        E.enumerate_sequences(7, bound=6)


def test_period_examples():
    assert E.period((1, 1, 1)) == ((1,), 3)
    assert E.period((3, 1, 3, 1, 3, 1))[1] == 3
    assert E.period((2, 1, 2, 1)) == ((2, 1), 2)


def test_symmetry_type_examples():
    assert E.symmetry_type((1, 1, 1)) is SymmetryType.TYPE1
    assert E.symmetry_type((2, 1, 2, 1)) is SymmetryType.TYPE1


def test_first_type2_witness():
    witness = None
    for n in range(3, 13):
        t2 = [s for s in E.enumerate_sequences(n) if E.symmetry_type(s) is SymmetryType.TYPE2]
        if t2:
            witness = t2[0]
            break
    assert witness == (1, 2, 3, 1, 2, 3)
    assert E.type1_witness(witness) is None


@given(st.integers(1, 12), st.data())
def test_dihedral_group_law(order, data):
    els = DihedralElement.all(order)
    g, h, k = (data.draw(st.sampled_from(els)) for _ in range(3))
    for x in range(order):
        assert g.compose(h)(x) == g(h(x))
    assert g.compose(h).compose(k) == g.compose(h.compose(k))
    assert g.compose(g.inverse()).is_identity()


def test_json_round_trip():
    obj = E.to_json((2, 1, 2, 1))
    assert obj == {"n": 4, "entries": [2, 1, 2, 1]}
    assert E.from_json(json.loads(json.dumps(obj))) == (2, 1, 2, 1)
    with pytest.raises(InvalidSequence):
        E.from_json({"n": 3, "entries": [2, 1, 2, 1]})
