import pytest

# criterion number -> (passed, detail); filled by test_acceptance
RESULTS: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def report():
    def record(n: int, ok: bool, detail: str) -> None:
        RESULTS[n] = (ok, detail)
        print(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
    return record


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        ok, detail = RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
