import pytest

_outcomes: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when not in ("setup", "call"):
        return
    n, title = mark.args
    entry = _outcomes.setdefault(n, {"title": title, "passed": 0, "failed": 0, "seconds": 0.0})
    if report.when == "call":
        entry["seconds"] += report.duration
    if report.failed:
        entry["failed"] += 1
    elif report.when == "call" and report.passed:
        entry["passed"] += 1


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_outcomes):
        e = _outcomes[n]
        verdict = "PASS" if e["failed"] == 0 and e["passed"] > 0 else "FAIL"
        terminalreporter.write_line(
            f"criterion {n:2d}: {verdict}  {e['title']}  "
            f"({e['passed']} passed, {e['failed']} failed, {e['seconds']:.1f} s)")
