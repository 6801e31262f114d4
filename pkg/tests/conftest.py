import os

import pytest
from hypothesis import HealthCheck, settings

from semicayley.catalog import catalog_group
from semicayley.chartable import character_table

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])


@pytest.fixture(scope="session")
def s3():
    return catalog_group("S3")


@pytest.fixture(scope="session")
def a4():
    return catalog_group("A4")


@pytest.fixture(scope="session")
def s3_table(s3):
    return character_table(s3)
