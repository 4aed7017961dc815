"""Per-criterion pass/fail lines for the acceptance module.

A test tagged ``@pytest.mark.criterion(k, "text")`` reports under criterion
``k``. Tests may attach a measured detail with ``record_property("detail", ...)``.
After the run, one line per criterion is printed in the terminal summary.
"""

import pytest

_results = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion this test decides")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not rep.failed:
        return
    number, text = mark.args
    detail = dict(item.user_properties).get("detail", "")
    ok, _, prev = _results.get(number, (True, text, ""))
    _results[number] = (ok and rep.passed, text, detail or prev)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_results):
        ok, text, detail = _results[number]
        line = f"{'PASS' if ok else 'FAIL'}  [{number:>2}] {text}"
        if detail:
            line += f"  ({detail})"
        tr.write_line(line)
