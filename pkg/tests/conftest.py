from __future__ import annotations

import sys

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "fixed",
    derandomize=True,
    max_examples=100,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("fixed")


@pytest.fixture(scope="session")
def fixtures():
    from bordismlab.classify import fixtures as load

    return load()


@pytest.fixture(scope="session")
def printed_fixtures():
    from bordismlab.classify import transcribed_fixtures

    return transcribed_fixtures()


def pytest_terminal_summary(terminalreporter):
    results = getattr(sys.modules.get("test_acceptance"), "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, detail = results[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}")


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", help="run exhaustive searches marked slow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="exhaustive search; pass --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)
