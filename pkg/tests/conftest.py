from __future__ import annotations

import pytest

from modlink import corpus


@pytest.fixture(scope="session")
def node():
    return corpus.node()


@pytest.fixture(scope="session")
def planes():
    return corpus.plane_pair()


@pytest.fixture(scope="session")
def poly3():
    return corpus.polynomial3()


@pytest.fixture(scope="session")
def cubic():
    return corpus.twisted_cubic()


# ---------- acceptance summary ----------

_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for i, (func, label) in enumerate(CRITERIA, start=1):
        hits = [o for nid, o in _ACCEPTANCE.items() if nid.split("::")[-1].split("[")[0] == func]
        if not hits:
            status = "NOT RUN"
        elif all(o == "passed" for o in hits):
            status = "PASS"
        else:
            status = "FAIL"
        terminalreporter.write_line(f"{status:7} {i:2d}. {label}")
