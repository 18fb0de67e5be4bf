from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from gsrghw.errors import InvalidParameter, ParameterTooLarge, UndefinedConstruction
from gsrghw.semigroup import (
    SemigroupTable,
    TowerParams,
    build_explicit,
    build_recursive,
    conductor,
    gap_law_genus,
    is_prime_power,
    member_set_upto,
    stated_genus,
)

from conftest import golden_json, table_for


def test_prime_power_detection():
    assert [n for n in range(1, 30) if is_prime_power(n)] == [
        2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29,
    ]


@pytest.mark.parametrize("ell, nu", [(1, 2), (0, 3), (2, 0), (3, -1)])
def test_invalid_params(ell, nu):
    with pytest.raises(InvalidParameter):
        TowerParams(ell, nu)


def test_non_prime_power_only_warns():
    p = TowerParams(6, 2)
    assert p.warnings and "not a prime power" in p.warnings[0]
    assert TowerParams(4, 2).warnings == ()
    assert build_recursive(p).gaps == gap_law_genus(p)


def test_level_one_is_all_of_n0():
    t = build_recursive(TowerParams(2, 1))
    assert t.conductor == 0 and t.gaps == 0 and t.small_elements == ()
    assert 0 in t and 5 in t and -1 not in t
    assert t.count_upto(3) == 3


def test_example_level_six():
    t = table_for(3, 6)
    assert t.conductor == 702
    assert t.small_elements[:9] == (0, 243, 486, 513, 540, 567, 594, 621, 648)
    # the listing in the source stops at 648 but 651 = 27 * 24 + 3 is a member
    assert 651 in t
    assert all(x in t for x in range(702, 800))
    assert 701 not in t
    assert t.gaps == 676


def test_golden_tables_roundtrip():
    for name, (ell, nu) in {"semigroup_3_6.json": (3, 6), "semigroup_2_4.json": (2, 4)}.items():
        doc = golden_json(name)
        assert table_for(ell, nu).to_dict() == doc
        assert SemigroupTable.from_dict(doc).small_elements == tuple(doc["small_elements"])


def test_from_dict_rejects_inconsistent_gaps():
    doc = golden_json("semigroup_2_4.json")
    doc["gaps"] += 1
    with pytest.raises(InvalidParameter):
        SemigroupTable.from_dict(doc)


def test_h24_shape():
    t = table_for(2, 4)
    assert t.conductor == 12
    assert t.small_elements == (0, 8, 10)
    assert t.gaps == 9


def test_stated_genus_is_next_level_gap_count():
    for ell in (2, 3, 4):
        for nu in range(1, 8):
            p = TowerParams(ell, nu)
            assert stated_genus(p) == gap_law_genus(TowerParams(ell, nu + 1))


def test_dimension_and_length_constraint():
    t = table_for(2, 4)
    assert t.dimension(-1, 40) == 0
    assert t.dimension(0, 40) == 1
    assert t.dimension(25, 40) == 17
    assert t.dimension(17, 40) == 9
    with pytest.raises(InvalidParameter, match="length constraint"):
        t.dimension(40, 40)


def test_explicit_rejects_odd_level():
    with pytest.raises(UndefinedConstruction, match="construction undefined for odd level"):
        build_explicit(TowerParams(2, 3))


@pytest.mark.parametrize("ell", [2, 3, 4, 5])
@pytest.mark.parametrize("nu", [2, 4, 6])
def test_explicit_matches_recursive(ell, nu):
    p = TowerParams(ell, nu)
    rec = build_recursive(p)
    dec = build_explicit(p)
    assert dec.conductor == rec.conductor == conductor(p)
    assert dec.lemma_violations() == []
    assert member_set_upto(dec.to_table(), rec.conductor) == member_set_upto(rec, rec.conductor)


def test_table_size_guard():
    with pytest.raises(ParameterTooLarge, match="parameter too large"):
        build_recursive(TowerParams(2, 40))


@settings(max_examples=40, deadline=None)
@given(
    st.sampled_from([2, 3, 4]),
    st.integers(min_value=1, max_value=7),
    st.data(),
)
def test_additive_closure(ell, nu, data):
    t = table_for(ell, nu)
    pool = t.small_elements + (t.conductor,)
    a = data.draw(st.sampled_from(pool))
    b = data.draw(st.sampled_from(pool))
    assert a + b in t


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3]), st.integers(min_value=1, max_value=7), st.integers(0, 3000))
def test_count_upto_matches_membership(ell, nu, x):
    t = table_for(ell, nu)
    assert t.count_upto(x) == sum(1 for y in range(1, x + 1) if y in t)
