import pytest

_criteria: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        number, title = marker.args
        _criteria[number] = (title, report.outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, outcome, duration = _criteria[number]
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {number}: {title} ({duration:.1f}s)")
