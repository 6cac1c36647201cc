import pytest

_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        report.criterion = mark.args


def pytest_runtest_logreport(report):
    crit = getattr(report, "criterion", None)
    if crit is None:
        return
    number, title = crit
    entry = _criteria.setdefault(number, {"title": title, "ok": True, "seconds": 0.0, "ran": False})
    entry["seconds"] += report.duration
    if report.when == "call":
        entry["ran"] = True
    if report.failed or report.skipped:
        entry["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        e = _criteria[number]
        status = "PASS" if e["ok"] and e["ran"] else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d}: {status}  {e['title']} ({e['seconds']:.1f} s)")
