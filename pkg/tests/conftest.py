import pytest

_criteria: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def record_criterion():
    """Record an acceptance outcome for the end-of-run summary, then assert it."""

    def record(label: str, passed: bool, detail: str = "") -> None:
        _criteria[label] = (bool(passed), detail)
        assert passed, f"{label}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_criteria, key=lambda s: int(s.split()[0])):
        passed, detail = _criteria[label]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {label}  {detail}")
