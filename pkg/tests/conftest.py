from __future__ import annotations

import re

import pytest

_ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    match = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if match:
        number, slug = int(match.group(1)), match.group(2).replace("_", " ")
        _ACCEPTANCE[number] = (slug, "PASS" if report.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        slug, verdict = _ACCEPTANCE[number]
        terminalreporter.write_line(f"{verdict} criterion {number}: {slug}")


@pytest.fixture(scope="session")
def fixtures():
    from troprez.fixtures import builtin_fixtures

    return builtin_fixtures()
