from __future__ import annotations

import os

import pytest
from hypothesis import HealthCheck, settings

from khturaev import catalog
from khturaev.diagram import parse_pd

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

TREFOIL_PD = "X 1 4 2 5 ; X 3 6 4 1 ; X 5 2 6 3"


@pytest.fixture(scope="session")
def trefoil():
    """The three-crossing PD trefoil; under the sign convention it is left-handed."""
    return parse_pd(TREFOIL_PD)


@pytest.fixture(scope="session")
def unknot():
    return catalog.get("unknot")


@pytest.fixture(scope="session")
def small_catalog():
    return catalog.lookup(8)


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line per acceptance criterion; printed in the terminal summary."""

    def record(label: str, ok: bool, detail: str = "") -> bool:
        line = f"{'PASS' if ok else 'FAIL'} [{label}] {detail}".rstrip()
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
