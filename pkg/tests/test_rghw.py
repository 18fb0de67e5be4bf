from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from gsrghw import kernels
from gsrghw.errors import InvalidParameter, WorkloadExceeded
from gsrghw.rghw import (
    BUDGET_ENV,
    CodePairSpec,
    ShiftSet,
    default_budget,
    estimate_steps,
    rghw_lower_exact,
    shifted_gap_count,
    z_exact,
    z_full,
)

from conftest import table_for

# (mu, m) -> (Z, lexicographically first minimising shift tuple) on H(2,4)
H24_GOLDEN = {
    (2, 2): (4, (-1,)),
    (3, 2): (3, (-2,)),
    (3, 3): (6, (-2, -1)),
    (4, 3): (6, (-3, -1)),
    (4, 4): (8, (-3, -2, -1)),
    (8, 4): (8, (-5, -3, -1)),
    (8, 5): (10, (-6, -4, -2, -1)),
    (8, 6): (12, (-7, -5, -3, -2, -1)),
    (12, 6): (12, (-8, -6, -4, -3, -2)),
}


def naive_count(table, shifts):
    covered = set()
    for s in shifts:
        for alpha in range(s, table.conductor):
            if table.contains(alpha - s) and not table.contains(alpha):
                covered.add(alpha)
    return len(covered)


def naive_z(table, mu, m):
    best = None
    for combo in combinations(range(-(mu - 1), 0), m - 1):
        v = naive_count(table, combo)
        if best is None or v < best[0]:
            best = (v, combo)
    return best if best else (0, ())


def test_example_single_shift(backend):
    t = table_for(3, 6)
    # pinned from the oracle; the A/C decomposition estimate is 22
    assert shifted_gap_count(t, [-20]) == 40
    assert shifted_gap_count(t, ShiftSet((-20,))) == naive_count(t, (-20,))


def test_z_example_level_six(backend):
    r = z_exact(table_for(3, 6), 21, 2, backend=backend)
    assert (r.value, r.witness) == (11, (-3,))


@pytest.mark.parametrize("key", sorted(H24_GOLDEN))
def test_h24_golden(backend, key):
    mu, m = key
    r = z_exact(table_for(2, 4), mu, m, backend=backend)
    assert (r.value, r.witness) == H24_GOLDEN[key]


def test_h24_naive_agreement(backend):
    t = table_for(2, 4)
    for mu in range(1, 10):
        for m in range(1, min(mu, 5) + 1):
            r = z_exact(t, mu, m, backend=backend)
            assert (r.value, r.witness) == naive_z(t, mu, m)


def test_z_full_values(backend):
    t = table_for(2, 4)
    assert [z_full(t, mu, backend=backend) for mu in (1, 2, 4, 8)] == [0, 4, 8, 16]
    for mu in range(1, 9):
        assert z_full(t, mu) == z_exact(t, mu, mu, backend=backend).value


@pytest.mark.parametrize("threads", [1, 2, 4])
def test_threads_reproduce_sequential_witness(backend, threads):
    t = table_for(3, 6)
    seq = z_exact(t, 12, 4, backend=backend)
    par = z_exact(t, 12, 4, threads=threads, backend=backend)
    assert par == seq


def test_backends_agree():
    names = sorted(kernels.available())
    t = table_for(3, 4)
    for mu in range(2, 14):
        for m in range(2, min(mu, 4) + 1):
            results = {z_exact(t, mu, m, backend=b) for b in names}
            assert len(results) == 1


def test_budget_guard():
    t = table_for(3, 6)
    with pytest.raises(WorkloadExceeded) as info:
        z_exact(t, 200, 20, budget=1000)
    assert info.value.estimate == estimate_steps(200, 20)
    assert info.value.budget == 1000
    assert z_exact(t, 6, 3, budget=1, force=True).value >= 0


def test_budget_env(monkeypatch):
    monkeypatch.setenv(BUDGET_ENV, "123")
    assert default_budget() == 123
    monkeypatch.setenv(BUDGET_ENV, "zero")
    with pytest.raises(InvalidParameter):
        default_budget()


def test_shift_set_validation():
    with pytest.raises(InvalidParameter):
        ShiftSet((-1, -2))
    with pytest.raises(InvalidParameter):
        ShiftSet((-2, 0))
    assert ShiftSet((-3, -1)).fits(4) and not ShiftSet((-4,)).fits(4)


def test_code_pair_spec():
    t = table_for(2, 4)
    pair = CodePairSpec.from_table(40, 25, 17, t)
    assert (pair.k1, pair.k2, pair.ell_cd, pair.mu_diff) == (17, 9, 8, 8)
    with pytest.raises(InvalidParameter):
        CodePairSpec.from_table(40, 17, 25, t)
    with pytest.raises(InvalidParameter):
        CodePairSpec.from_table(40, 40, 17, t)


def test_teomu_bound():
    t = table_for(2, 4)
    pair = CodePairSpec.from_table(50, 20, 16, t)
    bv = rghw_lower_exact(pair, t, 4)
    assert bv.value == 38 and bv.kind == "lower" and bv.method == "teomu-exactZ"
    assert bv.details["witness_shifts"] == [-3, -2, -1]
    assert rghw_lower_exact(pair, t, 1).value == 50 - 20
    with pytest.raises(InvalidParameter):
        rghw_lower_exact(pair, t, 5)


@settings(max_examples=60, deadline=None)
@given(
    st.sampled_from([(2, 2), (2, 3), (2, 4), (3, 2), (3, 4)]),
    st.integers(min_value=1, max_value=9),
    st.data(),
)
def test_z_matches_naive(level, mu, data):
    t = table_for(*level)
    m = data.draw(st.integers(min_value=1, max_value=min(mu, 4)))
    for name in kernels.available():
        r = z_exact(t, mu, m, backend=name)
        assert (r.value, r.witness) == naive_z(t, mu, m)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=2, max_value=14), st.data())
def test_z_monotone_in_m(mu, data):
    t = table_for(2, 4)
    m = data.draw(st.integers(min_value=1, max_value=min(mu, 5) - 1)) if mu > 2 else 1
    assert z_exact(t, mu, m).value <= z_exact(t, mu, m + 1).value
