import pytest

from fusionforge.groups import parse_group

# (criterion number, title, verdict, detail) rows filled in by test_acceptance.py
ACCEPTANCE: list[tuple[int, str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n, title, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {n} [{'PASS' if ok else 'FAIL'}] {title}: {detail}")


@pytest.fixture(scope="session")
def group():
    """Cached parse: tests that compare subgroups need one Group object per descriptor."""
    cache = {}

    def get(text):
        if text not in cache:
            cache[text] = parse_group(text)
        return cache[text]
    return get
