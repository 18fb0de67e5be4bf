"""Acceptance criteria, one test each; every test records a PASS/FAIL line."""

from __future__ import annotations

import subprocess
import sys
import time

import pytest

from gsrghw.asymptotics import coro_ag_delta, cormu_bound, cormu_g
from gsrghw.bounds import highest_rghw, propemme_g, propmu_closed, propmu_recursion_check
from gsrghw.ramp import scheme_report
from gsrghw.rghw import CodePairSpec, shifted_gap_count, z_exact, z_full
from gsrghw.semigroup import (
    TowerParams,
    build_explicit,
    build_recursive,
    gap_law_genus,
    member_set_upto,
)
from gsrghw.verify import classify, load_errata, structure_suite

from conftest import golden_text

pytestmark = pytest.mark.acceptance


def test_criterion_01_semigroup_reproduction(acceptance):
    start = time.perf_counter()
    t = build_recursive(TowerParams(3, 6))
    elapsed = time.perf_counter() - start
    listed = (0, 243, 486, 513, 540, 567, 594, 621, 648)
    ok = (
        t.small_elements[: len(listed)] == listed
        and t.conductor == 702
        and 701 not in t
        and 651 in t
        and t.gaps == (3**3 - 1) ** 2 == 676
        and elapsed < 1.0
    )
    acceptance(1, ok, f"H(3,6): conductor {t.conductor}, 651 member, gaps {t.gaps}, {elapsed:.3f}s")


def test_criterion_02_construction_equivalence(acceptance):
    start = time.perf_counter()
    mismatches = []
    for ell in (2, 3, 4):
        for nu in (2, 4, 6, 8):
            p = TowerParams(ell, nu)
            rec = build_recursive(p)
            exp = build_explicit(p).to_table()
            c = rec.conductor
            if member_set_upto(rec, c) != member_set_upto(exp, c):
                mismatches.append((ell, nu))
    elapsed = time.perf_counter() - start
    acceptance(2, not mismatches and elapsed < 5.0, f"mismatches {mismatches}, {elapsed:.3f}s")


def test_criterion_03_gap_law_and_genus_erratum(acceptance):
    errata = load_errata()
    bad_law, unlogged = [], []
    for ell in (2, 3, 4):
        for nu in range(1, 9):
            p = TowerParams(ell, nu)
            t = build_recursive(p)
            if t.gaps != (ell ** ((nu + 1) // 2) - 1) * (ell ** (nu // 2) - 1) or t.gaps != gap_law_genus(p):
                bad_law.append((ell, nu))
            records = []
            structure_suite(t, records)
            genus = [r for r in records if r["method"] == "stated-genus"]
            if not (genus and classify(genus[0], errata).startswith("known:")):
                unlogged.append((ell, nu))
    ok = not bad_law and not unlogged
    acceptance(3, ok, f"gap-law failures {bad_law}, genus erratum missing at {unlogged}")


def test_criterion_04_highest_first_branch(acceptance):
    failures = []
    for ell in (2, 3):
        for nu in (2, 4, 6):
            t = build_recursive(TowerParams(ell, nu))
            base = ell ** (nu - 1)
            for mu in range(base, base + 11):
                if z_full(t, mu) != t.gaps + mu - 1:
                    failures.append((ell, nu, mu))
    acceptance(4, not failures, f"z_full = gaps + mu - 1 failures: {failures}")


def test_criterion_05_propmu_recursion(acceptance):
    start = time.perf_counter()
    rec_fail, conj_fail = [], []
    for ell in (2, 3):
        for nu in (2, 4, 6):
            p = TowerParams(ell, nu)
            t = build_recursive(p)
            base = ell ** (nu - 1)
            report = propmu_recursion_check(t, base)
            rec_fail.extend((ell, nu, s.mu) for s in report.violations)
            for mu in range(1, base):
                d = propmu_closed(p, mu, table=t).details
                if d["delta"] != base - mu:
                    conj_fail.append((ell, nu, mu))
    elapsed = time.perf_counter() - start
    # a failed delta conjecture would only be a ledger entry
    acceptance(
        5,
        not rec_fail and elapsed < 10.0,
        f"recursion failures {rec_fail}; delta conjecture failures {conj_fail}; {elapsed:.3f}s",
    )


def test_criterion_06_small_codimension_soundness(acceptance):
    start = time.perf_counter()
    failures = []
    grids = [((2, 4), range(2, 13), 6), ((3, 6), range(2, 9), 3)]
    for (ell, nu), mus, m_cap in grids:
        p = TowerParams(ell, nu)
        t = build_recursive(p)
        for mu in mus:
            for m in range(2, min(mu, m_cap) + 1):
                g = propemme_g(p, mu, m).g_auth
                z = z_exact(t, mu, m).value
                if g - 1e-9 > z:
                    failures.append((ell, nu, mu, m, g, z))
    elapsed = time.perf_counter() - start
    acceptance(6, not failures and elapsed < 60.0, f"violations {failures}, {elapsed:.3f}s")


def test_criterion_07_example_single_shift(acceptance):
    t = build_recursive(TowerParams(3, 6))
    estimate = 9 * (2 - 1) + 13
    exact = shifted_gap_count(t, [-20])
    acceptance(7, estimate == 22 and estimate <= exact == 40, f"estimate {estimate} <= exact {exact} (pinned 40)")


def test_criterion_08_asymptotic_dominance(acceptance):
    q = 64
    limit = 1 / (4 * (q - 8))
    failures = []
    checked = 0
    for rt in (0.0005, 0.001, 0.002, 0.003, 0.004, 0.99 * limit):
        assert rt < limit
        steps = int(min(rt, 1 / 7) / 1e-3 + 1e-9)
        for i in range(steps + 1):
            rho = i * 1e-3
            solid = cormu_bound(q, rho, rt).value
            dashed = coro_ag_delta(q, rt, rt, rho)
            checked += 1
            if solid < max(dashed.delta1, dashed.delta2) - 1e-9:
                failures.append((rt, rho))
    acceptance(8, not failures, f"{checked} grid points, failures {failures}")


def test_criterion_09_finite_to_asymptotic(acceptance):
    q, ell = 16, 4
    details = []
    ok = True
    for rho, rt in ((0.002, 0.05), (0.005, 0.1), (0.01, 0.2)):
        target = cormu_g(q, rho, rt).value
        diffs = []
        for nu in (4, 6, 8):
            n = ell ** (nu - 1) * (q - ell)
            m = max(1, round(rho * n))
            mu = max(m, round(rt * n))
            diffs.append(abs(propemme_g(TowerParams(ell, nu), mu, m).g_auth / n - target))
        ok &= diffs[0] > diffs[1] > diffs[2]
        details.append(f"({rho},{rt}): " + " > ".join(f"{d:.5f}" for d in diffs))
    acceptance(9, ok, "; ".join(details))


def test_criterion_10_ramp_pipeline(acceptance):
    t = build_recursive(TowerParams(2, 4))
    pair = CodePairSpec.from_table(40, 25, 17, t)
    lower, _ = highest_rghw(pair, t)
    report = scheme_report(40, pair, CodePairSpec.from_table(40, 39, 31, t), t)
    base = [
        sys.executable, "-m", "gsrghw.cli", "ramp", "--ell", "2", "--nu", "4", "--n", "40",
        "--mu1", "25", "--mu2", "17", "--dual-mu1", "39", "--dual-mu2", "31",
    ]
    outputs = set()
    for threads in ("1", "2", "4", "1"):
        proc = subprocess.run(base + ["--threads", threads], capture_output=True, check=True)
        outputs.add(proc.stdout)
    golden = golden_text("ramp_40_25_17.json").encode()
    ok = (
        lower.value == 31
        and lower.kind == "exact"
        and report.r_upper[0] == 10
        and outputs == {golden}
    )
    acceptance(10, ok, f"M_l {lower.value} ({lower.kind}), r_1 {report.r_upper[0]}, distinct CLI outputs {len(outputs)}")
