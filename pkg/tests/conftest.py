"""Collects the acceptance verdicts and prints them after the run."""
import pytest

VERDICTS = {}


@pytest.fixture
def verdict(request):
    """Record ``(label, passed, detail)`` for the end-of-run acceptance report."""
    def record(label: str, passed: bool, detail: str) -> None:
        VERDICTS[label] = (passed, detail)
        print(f"CRITERION {label}: {'PASS' if passed else 'FAIL'} - {detail}")
    return record


def pytest_terminal_summary(terminalreporter):
    if not VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    # "5a" sorts after "4" and before "6"
    for k in sorted(VERDICTS, key=lambda s: (int(s.rstrip("ab")), s)):
        passed, detail = VERDICTS[k]
        terminalreporter.write_line(f"CRITERION {k:>3}: {'PASS' if passed else 'FAIL'} - {detail}")
