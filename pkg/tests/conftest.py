"""Prints one pass/fail line per acceptance criterion at the end of a run."""

from __future__ import annotations

import pytest

_results: dict[int, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, description = marker.args
    if report.when == "call":
        _results[number] = ("PASS" if report.passed else "FAIL", description)
    elif report.when == "setup" and report.failed:
        _results[number] = ("FAIL", description)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        status, description = _results[number]
        terminalreporter.write_line(f"criterion {number:2d} {status}  {description}")
