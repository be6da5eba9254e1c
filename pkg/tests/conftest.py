from __future__ import annotations

import pytest

_ACCEPTANCE_RESULTS: list[tuple[int, str, str, str]] = []


@pytest.fixture
def acceptance():
    """Recorder used by test_acceptance; one line per criterion is printed
    in the terminal summary."""

    def record(criterion: int, name: str, passed: bool, detail: str = "") -> None:
        status = "PASS" if passed else "FAIL"
        _ACCEPTANCE_RESULTS.append((criterion, name, status, detail))

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for criterion, name, status, detail in sorted(_ACCEPTANCE_RESULTS):
        line = f"criterion {criterion} [{name}]: {status}"
        if detail:
            line += f" - {detail}"
        terminalreporter.write_line(line)
