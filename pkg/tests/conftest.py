"""Collects one pass/fail line per acceptance criterion and prints them at the end."""
import pytest

_RESULTS = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    num, title = mark.args
    prev = _RESULTS.get(num, (title, True))
    _RESULTS[num] = (title, prev[1] and not rep.failed)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_RESULTS):
        title, ok = _RESULTS[num]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {num}: {title}")
