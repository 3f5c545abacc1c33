from __future__ import annotations

import re
from pathlib import Path

import pytest

from dialogue_revision.realizer import load_lexicon

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def golden_dir() -> Path:
    return GOLDEN


@pytest.fixture(scope="session")
def lexicon():
    return load_lexicon(FIXTURES / "lexicon.tsv")


_CRITERION = re.compile(r"test_criterion_(\d+[a-z]?)_(\w+)")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion."""
    rows = []
    for status in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(status, ()):
            if "test_acceptance.py" not in report.nodeid:
                continue
            match = _CRITERION.search(report.nodeid)
            if match:
                label = match.group(2).replace("_", " ")
                rows.append((match.group(1), label, "PASS" if status == "passed" else "FAIL"))
    if rows:
        terminalreporter.section("acceptance criteria")
        for number, label, verdict in sorted(rows):
            terminalreporter.write_line(f"criterion {number} ({label}): {verdict}")
