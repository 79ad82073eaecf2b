from __future__ import annotations

from pathlib import Path

import pytest

from stablemarriage.core import parse_profile

DATA = Path(__file__).parent / "data"

# criterion number -> (passed, detail), filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def load(name: str):
    return parse_profile((DATA / name).read_text())


@pytest.fixture
def example1():
    return load("example1.txt")


@pytest.fixture
def universal_example():
    return load("universal.txt")


@pytest.fixture
def signature_example():
    return load("signature.txt")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
