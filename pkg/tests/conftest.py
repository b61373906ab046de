from collections import defaultdict

import pytest

_outcomes = defaultdict(list)
_titles = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m:
            _titles[m.args[0]] = m.args[1]


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is None:
        return
    if rep.when == "call" or rep.failed or rep.skipped:
        _outcomes[m.args[0]].append((rep.outcome, rep.duration))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_titles):
        res = _outcomes.get(n, [])
        if not res:
            verdict = "NOT RUN"
        elif any(o == "failed" for o, _ in res):
            verdict = "FAIL"
        elif all(o == "passed" for o, _ in res):
            verdict = "PASS"
        else:
            verdict = "SKIP"
        secs = sum(d for _, d in res)
        terminalreporter.write_line(f"criterion {n:2d}: {verdict:7s} {_titles[n]} ({secs:.1f} s)")
