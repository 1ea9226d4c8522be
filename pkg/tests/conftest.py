import pytest

_LINES = []


@pytest.fixture
def criterion():
    """Record one acceptance verdict line, then assert it."""

    def check(label: str, ok: bool, detail: str = ""):
        _LINES.append(f"[{'PASS' if ok else 'FAIL'}] {label}" + (f"  ({detail})" if detail else ""))
        assert ok, f"{label}: {detail}"

    return check


@pytest.fixture
def note():
    def add(text: str):
        _LINES.append(f"[INFO] {text}")

    return add


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
