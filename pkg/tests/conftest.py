import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from penrose_tomo.modelset import DEFAULT_SPEC, generate_patch  # noqa: E402


@pytest.fixture(scope="session")
def patch10():
    return generate_patch(10, DEFAULT_SPEC)


@pytest.fixture(scope="session")
def patch20():
    return generate_patch(20, DEFAULT_SPEC)


@pytest.fixture(scope="session")
def patch50():
    return generate_patch(50, DEFAULT_SPEC)


_CRITERIA: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or report.outcome != "passed":
        _CRITERIA[name] = "PASS" if report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA):
        number = int(name.split("_")[2])
        label = " ".join(name.split("_")[3:])
        terminalreporter.write_line(f"criterion {number:2d} {label}: {_CRITERIA[name]}")
