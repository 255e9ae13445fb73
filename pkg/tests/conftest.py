import pytest

_RESULTS: dict[str, list[tuple[bool, str]]] = {}


@pytest.fixture
def criterion():
    """Record one sub-result of an acceptance criterion for the summary."""

    def record(key: str, ok: bool, detail: str) -> bool:
        _RESULTS.setdefault(key, []).append((bool(ok), detail))
        print(f"{key} {'PASS' if ok else 'FAIL'}  {detail}")
        return bool(ok)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_RESULTS):
        parts = _RESULTS[key]
        ok = all(p[0] for p in parts)
        detail = "; ".join(("" if p[0] else "FAILED: ") + p[1] for p in parts)
        terminalreporter.write_line(f"{key} {'PASS' if ok else 'FAIL'}  {detail}")
