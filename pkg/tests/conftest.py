"""Shared test plumbing.

The acceptance tests register one PASS/FAIL/SKIP line apiece; the
terminal-summary hook prints them together at the end of the run so the
verdict per criterion is visible without digging through dots.
"""

ACCEPTANCE_RESULTS = []


def record_acceptance(line):
    ACCEPTANCE_RESULTS.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)
