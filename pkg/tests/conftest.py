import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    ACCEPTANCE[name] = report.passed


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for k, (name, title) in enumerate(CRITERIA, 1):
        if name in ACCEPTANCE:
            verdict = "PASS" if ACCEPTANCE[name] else "FAIL"
            terminalreporter.write_line(f"{verdict} criterion {k}: {title}")
