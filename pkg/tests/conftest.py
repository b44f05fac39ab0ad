from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_RESULTS: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def _criterion(item):
    mark = item.get_closest_marker("criterion")
    return None if mark is None else mark.args


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    args = getattr(report, "criterion", None)
    if args is None:
        return
    number, title = args
    entry = _RESULTS.setdefault(number, {"title": title, "ok": True, "notes": []})
    entry["ok"] &= report.passed
    entry["notes"].extend(getattr(report, "notes", []))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    report.criterion = _criterion(item)
    report.notes = list(getattr(item, "notes", []))


@pytest.fixture
def notes(request):
    """Append strings here to have them shown next to the criterion line."""
    request.node.notes = []
    return request.node.notes


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        entry = _RESULTS[number]
        status = "PASS" if entry["ok"] else "FAIL"
        extra = f" ({'; '.join(entry['notes'])})" if entry["notes"] else ""
        terminalreporter.write_line(f"criterion {number:2d} {status}: {entry['title']}{extra}")
