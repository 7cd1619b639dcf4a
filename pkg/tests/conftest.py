"""Shared test plumbing: the acceptance tests push one line per criterion
into a list that gets echoed as its own section at the end of the run, so
the pass/fail status of each criterion is visible without scrolling."""

_criterion_lines = []


def record_criterion(line: str):
    _criterion_lines.append(line)


def pytest_terminal_summary(terminalreporter):
    if not _criterion_lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(_criterion_lines):
        terminalreporter.write_line(line)
