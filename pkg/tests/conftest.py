"""Shared pytest wiring for the test suite.

The only hook here replays the acceptance one-liners collected during the
run as a dedicated terminal-summary section, so each criterion's PASS/FAIL
line shows up even though pytest captures stdout of passing tests.
"""

import acceptance_report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not acceptance_report.lines:
        return
    terminalreporter.ensure_newline()
    terminalreporter.section("acceptance criteria", sep="-")
    for line in acceptance_report.lines:
        terminalreporter.write_line(line)
