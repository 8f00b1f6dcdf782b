import time

import pytest

_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion checked by this test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_call(item):
    marker = item.get_closest_marker("criterion")
    start = time.perf_counter()
    outcome = yield
    if marker is None:
        return
    number, title = marker.args
    entry = _criteria.setdefault(number, {"title": title, "ok": True, "seconds": 0.0, "detail": ""})
    entry["seconds"] += time.perf_counter() - start
    if outcome.excinfo is not None:
        entry["ok"] = False
        entry["detail"] = str(outcome.excinfo[1]).splitlines()[0][:160] if str(outcome.excinfo[1]) else ""


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        e = _criteria[number]
        verdict = "PASS" if e["ok"] else "FAIL"
        line = f"criterion {number}: {verdict}  {e['title']}  ({e['seconds']:.1f}s)"
        if e["detail"]:
            line += f"  {e['detail']}"
        terminalreporter.write_line(line)
