from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from gsrghw.errors import InvalidParameter, InvariantViolation
from gsrghw.ramp import (
    invert_reconstruction,
    privacy_bounds,
    reconstruction_bounds,
    scheme_report,
)
from gsrghw.rghw import CodePairSpec

from conftest import table_for


def test_direct_formulas():
    assert reconstruction_bounds(10, 2, [7, 8]) == [3, 4]
    assert privacy_bounds([5, 6]) == [4, 5]
    assert privacy_bounds([1, 2]) == [0, 1]


def test_singleton_attained_gives_k2_plus_one():
    # M_l = n - k2 with n=40, k2=9
    assert reconstruction_bounds(40, 2, [20, 31])[0] == 10


def test_rejects_bad_vectors():
    with pytest.raises(InvalidParameter, match="nondecreasing"):
        reconstruction_bounds(10, 2, [8, 7])
    with pytest.raises(InvalidParameter):
        reconstruction_bounds(10, 2, [0, 7])
    with pytest.raises(InvalidParameter):
        reconstruction_bounds(10, 3, [7, 8])


def test_toy_vectors_break_privacy_invariant():
    # t_1 = 4 is not below r_1 = 3
    with pytest.raises(InvariantViolation) as info:
        scheme_report(10, [7, 8], [5, 6])
    assert info.value.index == 1


def test_consistent_toy_report():
    rep = scheme_report(10, [7, 8], [2, 3])
    assert rep.to_dict() == {
        "n": 10,
        "ell": 2,
        "r_upper": [3, 4],
        "t_lower": [1, 2],
        "assumptions": [
            "M_1(C1,C2) >= 7 via user-supplied",
            "M_2(C1,C2) >= 8 via user-supplied",
            "M_1(C2^perp,C1^perp) >= 2 via user-supplied",
            "M_2(C2^perp,C1^perp) >= 3 via user-supplied",
        ],
    }


def test_pipeline_with_pair(backend):
    t = table_for(2, 4)
    pair = CodePairSpec.from_table(40, 25, 17, t)
    rep = scheme_report(40, pair, [1, 2, 3, 4, 5, 6, 7, 8], t)
    assert rep.r_upper[0] == 10
    assert rep.r_upper == tuple(sorted(rep.r_upper))
    assert "M_8(C1,C2) >= 31 via highest-zfull" in rep.assumptions
    assert "M_1(C1,C2) >= 15 via teomu-exactZ" in rep.assumptions
    assert any("user-supplied" in a for a in rep.assumptions)


def test_dual_pair_is_tagged_as_asserted():
    t = table_for(2, 4)
    rep = scheme_report(
        40, CodePairSpec.from_table(40, 25, 17, t), CodePairSpec.from_table(40, 39, 31, t), t
    )
    assert rep.t_lower == (0, 3, 6, 8, 10, 12, 14, 16)
    assert all(tl < r for tl, r in zip(rep.t_lower, rep.r_upper))
    assert sum("user-asserted dual pair" in a for a in rep.assumptions) == 8


def test_missing_dual_claims_nothing():
    rep = scheme_report(10, [7, 8])
    assert rep.t_lower == (None, None)
    assert any("not claimed" in a for a in rep.assumptions)


def test_dual_length_mismatch():
    with pytest.raises(InvalidParameter):
        scheme_report(10, [7, 8], [2])


@given(st.lists(st.integers(min_value=1, max_value=50), min_size=1, max_size=12))
def test_round_trip(values):
    M = sorted(values)
    r = reconstruction_bounds(50, len(M), M)
    assert invert_reconstruction(50, r) == M
    assert r == sorted(r)
