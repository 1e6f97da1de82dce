import pytest

ACCEPTANCE_LINES = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py::test_criterion" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        ACCEPTANCE_LINES.append(f"{'PASS' if report.passed else 'FAIL'}  {name}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
