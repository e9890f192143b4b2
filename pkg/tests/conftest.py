import time

import pytest

SUITE_BUDGET_SECONDS = 15 * 60

_outcomes: dict[int, tuple[str, str]] = {}
_started = time.monotonic()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.failed):
        _outcomes[number] = ("PASS" if report.passed else "FAIL", title)


def pytest_sessionfinish(session, exitstatus):
    elapsed = time.monotonic() - _started
    session.config._omega_elapsed = elapsed
    if elapsed > SUITE_BUDGET_SECONDS and exitstatus == 0:
        session.exitstatus = 1


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _outcomes:
        return
    elapsed = getattr(config, "_omega_elapsed", time.monotonic() - _started)
    terminalreporter.section("acceptance criteria")
    for number in sorted(_outcomes):
        status, title = _outcomes[number]
        terminalreporter.write_line(f"criterion {number:>2}: {status}  {title}")
    status = "PASS" if elapsed <= SUITE_BUDGET_SECONDS else "FAIL"
    terminalreporter.write_line(f"suite runtime: {status}  {elapsed:.1f}s (budget {SUITE_BUDGET_SECONDS}s)")
