import pytest

from mokshapatam import fixtures

PAPER_BOARDS = [
    pytest.param(fixtures.ZERO, id="0"),
    pytest.param(fixtures.XI, id="8(Xi)"),
    pytest.param(fixtures.U, id="6(U)"),
    pytest.param(fixtures.ALPHA, id="10(alpha)"),
    pytest.param(fixtures.DELTA, id="7(Delta)"),
    pytest.param(fixtures.G0, id="14(G0)"),
    pytest.param(fixtures.FIFTY_TRAP, id="6(fifty)"),
]

_criteria: dict[int, list[tuple[str, str]]] = {}
NOTES: dict[int, list[str]] = {}


def note(criterion: int, text: str) -> None:
    """Attach an informational line to a criterion's summary."""
    NOTES.setdefault(criterion, []).append(text)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _criteria.setdefault(marker.args[0], []).append((item.name, rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for crit in sorted(_criteria):
        results = _criteria[crit]
        ok = all(o == "passed" for _, o in results)
        failed = [n for n, o in results if o != "passed"]
        line = f"criterion {crit}: {'PASS' if ok else 'FAIL'} ({len(results) - len(failed)}/{len(results)} checks)"
        if failed:
            line += " failing: " + ", ".join(failed)
        tr.write_line(line)
        for text in NOTES.get(crit, []):
            tr.write_line(f"    {text}")
