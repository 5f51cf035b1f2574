import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

import acceptance_log  # noqa: E402


def pytest_terminal_summary(terminalreporter):
    if not acceptance_log.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(acceptance_log.RESULTS):
        terminalreporter.write_line(acceptance_log.line(criterion))
