from __future__ import annotations

from collections import Counter

import pytest

from gsrghw.errors import InvalidParameter, WorkloadExceeded
from gsrghw.verify import VerifyConfig, classify, load_errata, run_verification

from conftest import golden_text


@pytest.fixture(scope="module")
def default_run():
    return run_verification()


def test_default_run_has_only_known_errata(default_run):
    assert default_run.exit_code == 0
    methods = Counter(r["method"] for r in default_run.records)
    assert methods["stated-genus"] == 12
    assert methods["example-651"] == 1
    assert methods["propmu-closed"] > 0
    assert all(r["status"].startswith("known:") for r in default_run.records)


def test_default_ledger_golden(default_run):
    assert default_run.jsonl() == golden_text("verify_default.jsonl")


def test_ledger_order(default_run):
    keys = [(r["method"], r["params"].get("ell", -1), r["params"].get("nu", -1)) for r in default_run.records]
    assert keys == sorted(keys)


def test_injected_fault_fails():
    res = run_verification(VerifyConfig(inject_fault=True))
    assert res.exit_code == 1
    assert {"gap-law", "construction-equivalence"} <= {r["method"] for r in res.failures}


def test_budget_exhaustion():
    with pytest.raises(WorkloadExceeded):
        run_verification(VerifyConfig(budget=10))


def test_unknown_discrepancy_is_new():
    errata = load_errata()
    rec = {"method": "propmu-closed", "params": {"ell": 2, "nu": 4, "mu": 4}, "delta": 3}
    assert classify(rec, errata) == "new"
    rec["delta"] = 4
    assert classify(rec, errata) == "known:propmu-closed-delta"
    assert classify({"method": "something-else", "params": {}}, errata) == "new"


def test_config_validation():
    with pytest.raises(InvalidParameter):
        VerifyConfig(max_ell=1)
