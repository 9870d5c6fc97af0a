"""Prints one PASS/FAIL line per acceptance criterion at the end of the run."""

from __future__ import annotations

_results = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or report.failed or report.skipped:
        detail = dict(report.user_properties).get("detail", "")
        prev = _results.get(name)
        if prev is None or prev[0] == "PASS":
            status = "PASS" if report.passed else ("SKIP" if report.skipped else "FAIL")
            _results[name] = (status, detail)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_results):
        status, detail = _results[name]
        terminalreporter.write_line(f"{status}  {name}  {detail}".rstrip())
