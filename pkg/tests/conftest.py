from __future__ import annotations

import json
from functools import lru_cache
from pathlib import Path

import pytest

from gsrghw import kernels
from gsrghw.semigroup import TowerParams, build_recursive

GOLDEN = Path(__file__).parent / "golden"


@lru_cache(maxsize=None)
def table_for(ell: int, nu: int):
    return build_recursive(TowerParams(ell, nu))


def golden_text(name: str) -> str:
    return (GOLDEN / name).read_text()


def golden_json(name: str):
    return json.loads(golden_text(name))


@pytest.fixture(params=sorted(kernels.available()))
def backend(request, monkeypatch):
    """Run the test once per kernel backend, with that backend as the default."""
    module = kernels.get(request.param)
    monkeypatch.setattr(kernels, "impl", module)
    return request.param


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance():
    """Record one pass/fail line for an acceptance criterion."""

    def record(number: int, ok: bool, detail: str) -> None:
        ACCEPTANCE_LINES.append(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
