import logging
import random

import pytest

from corelab.synthetic import bundled_path

_ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, name): acceptance criterion covered by the test")


def pytest_runtest_logreport(report):
    marker = getattr(report, "criterion", None)
    if marker is None or (report.when != "call" and report.passed):
        return
    number, name = marker
    prev = _ACCEPTANCE.get(number, (name, "PASS"))[1]
    status = "PASS" if report.passed and prev == "PASS" else "FAIL"
    _ACCEPTANCE[number] = (name, status)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        outcome.get_result().criterion = tuple(mark.args)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        name, status = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:>2} {status}  {name}")


@pytest.fixture
def diagnostics(caplog):
    """Structured diagnostics captured from the corelab logger."""
    caplog.set_level(logging.INFO, logger="corelab")

    def codes():
        return [getattr(r, "diag", {}).get("code") for r in caplog.records]

    return codes


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture(scope="session")
def corpus_path():
    return str(bundled_path("synthetic_corpus.jsonl"))


@pytest.fixture(scope="session")
def gold_path():
    return str(bundled_path("lid_gold.jsonl"))
