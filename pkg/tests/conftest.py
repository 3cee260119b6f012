import os
import random

import pytest

from bookrep.census import census
from bookrep.equivalence import classify_all
from bookrep.model import BookRep, iter_rep_masks

OPTION1 = "13,14,46|15,24,25|26,35,36"
REP_4S1 = "13,14,15|24,26|35,36|25|46"


@pytest.fixture(scope="session")
def orbit_cache(tmp_path_factory):
    # BOOKREP_TEST_CACHE lets a developer reuse an orbit file between runs
    cache = os.environ.get("BOOKREP_TEST_CACHE") or tmp_path_factory.mktemp("orbits") / "orbits.jsonl"
    classify_all(cache=cache)
    return str(cache)


@pytest.fixture(scope="session")
def classification(orbit_cache):
    return classify_all(cache=orbit_cache)


@pytest.fixture(scope="session")
def class_censuses(classification):
    return [census(o.representative) for o in classification.orbits]


@pytest.fixture(scope="session")
def all_masks():
    return list(iter_rep_masks())


@pytest.fixture(scope="session")
def sample_reps(all_masks):
    rng = random.Random(20260101)
    return [BookRep.from_masks(6, m) for m in rng.sample(all_masks, 1200)]


# -- acceptance summary ------------------------------------------------------------

_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when != "call" and report.passed:
        return
    n, title = mark.args
    status = "PASS" if report.passed else "FAIL"
    if n not in _criteria or status == "FAIL":
        _criteria[n] = (status, title)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        status, title = _criteria[n]
        terminalreporter.write_line(f"{status} criterion {n}: {title}")
