import contextlib

import pytest

_criteria = []


@pytest.fixture
def criterion():
    """Record one acceptance criterion's outcome for the terminal summary."""

    @contextlib.contextmanager
    def record(number, description):
        try:
            yield
        except BaseException as exc:
            _criteria.append((number, "FAIL", description, f"{type(exc).__name__}: {exc}".splitlines()[0]))
            raise
        _criteria.append((number, "PASS", description, ""))

    return record


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number, status, description, detail in sorted(_criteria, key=lambda c: (int(str(c[0]).rstrip("ab")), str(c[0]))):
        line = f"[{status}] {number}. {description}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
