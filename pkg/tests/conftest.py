"""Acceptance bookkeeping: tests marked ``criterion(n)`` roll up into one
PASS/FAIL line per criterion in the terminal summary."""
from collections import defaultdict

import pytest

CRITERIA = {
    1: "worked-example matrices reproduced exactly",
    2: "property suites, >=200 instances each",
    3: "bar constructions agree with the oracle",
    4: "KG identities on reflection and worked systems",
    5: "classical binomial case, N <= 8",
    6: "CLI contract",
}

_outcomes = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion the test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _outcomes[marker.args[0]].append((item.name, report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n, title in CRITERIA.items():
        results = _outcomes.get(n)
        if not results:
            terminalreporter.write_line(f"criterion {n}: NOT RUN  {title}")
            continue
        failed = [name for name, ok in results if not ok]
        status = "PASS" if not failed else "FAIL"
        line = f"criterion {n}: {status}  {title} ({len(results) - len(failed)}/{len(results)} tests)"
        if failed:
            line += "  failing: " + ", ".join(failed)
        terminalreporter.write_line(line)
