"""Collects outcomes of tests marked ``criterion`` and prints one line per criterion."""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_outcomes = {}  # id -> [text, passed, failing test names]


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        outcome.get_result().criterion = marker.args


def pytest_runtest_logreport(report):
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    cid, text = marker
    entry = _outcomes.setdefault(cid, [text, True, []])
    if report.failed:
        entry[1] = False
        name = report.nodeid.split("::")[-1]
        if name not in entry[2]:
            entry[2].append(name)


def _sort_key(cid):
    digits = "".join(ch for ch in cid if ch.isdigit())
    return (int(digits), cid)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(_outcomes, key=_sort_key):
        text, passed, failing = _outcomes[cid]
        line = f"[{'PASS' if passed else 'FAIL'}] criterion {cid}: {text}"
        if failing:
            line += f" (failing: {', '.join(failing)})"
        terminalreporter.write_line(line)
