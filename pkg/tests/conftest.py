"""Shared pytest configuration.

The acceptance module doubles as the release gate, so its outcomes are
echoed one line per criterion at the end of the run.
"""

from __future__ import annotations

_acceptance_results: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    if "test_acceptance" not in report.nodeid or report.when != "call":
        return
    name = report.nodeid.split("::")[-1]
    if report.passed:
        _acceptance_results.append((name, "PASS"))
    elif report.failed:
        _acceptance_results.append((name, "FAIL"))


def pytest_runtest_logfinish(nodeid, location):
    pass


def pytest_terminal_summary(terminalreporter):
    skipped = {
        rep.nodeid.split("::")[-1]
        for rep in terminalreporter.stats.get("skipped", [])
        if "test_acceptance" in rep.nodeid
    }
    if not _acceptance_results and not skipped:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name, outcome in _acceptance_results:
        terminalreporter.write_line(f"[{outcome}] {name}")
    for name in sorted(skipped):
        terminalreporter.write_line(f"[SKIP] {name}")
