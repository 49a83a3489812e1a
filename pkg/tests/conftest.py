import os
import re
from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings

from astride import Dataset, znormalize
from astride.ingest import find_ucr, load_split

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ROOT = Path(__file__).resolve().parents[1]
DATA_ROOT = Path(os.environ.get("ASTRIDE_DATA", ROOT / "data" / "UCR"))


def ucr_available(name):
    try:
        find_ucr(name, DATA_ROOT)
        return True
    except FileNotFoundError:
        return False


def ucr_split(name):
    if not ucr_available(name):
        pytest.skip(f"UCR dataset {name} not found under {DATA_ROOT}")
    return load_split(name, DATA_ROOT)


def random_walks(rng, N, n):
    return znormalize(Dataset(np.cumsum(rng.normal(size=(N, n)), axis=1)))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def walks(rng):
    return random_walks(rng, 12, 64)


# one PASS/FAIL/SKIP line per acceptance criterion in the terminal summary
_ACCEPTANCE = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, text): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.skipped):
        status = "PASS" if report.passed else ("SKIP" if report.skipped else "FAIL")
        _ACCEPTANCE.append((marker.args[0], status, marker.args[1], item.name))


def _order(record):
    number = str(record[0])
    digits = re.match(r"\d+", number)
    return (int(digits.group()) if digits else 0, number, record[3])


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, status, text, name in sorted(_ACCEPTANCE, key=_order):
        terminalreporter.write_line(f"[{status}] criterion {number}: {text} ({name})")
