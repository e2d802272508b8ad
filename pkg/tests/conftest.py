import random

import pytest
from hypothesis import settings

from gaugelogic.syntax import SymbolTable

from corpus import derivation_corpus, formula_corpus

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

_criteria: dict[int, tuple[str, bool]] = {}


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=20240917,
                     help="seed for the random formula corpora")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.fixture(scope="session")
def seed(request) -> int:
    return request.config.getoption("--seed")


@pytest.fixture
def rng(seed) -> random.Random:
    return random.Random(seed)


@pytest.fixture
def table() -> SymbolTable:
    return SymbolTable()


@pytest.fixture(scope="session")
def formulas(seed):
    return formula_corpus(seed, 1000)


@pytest.fixture(scope="session")
def derivations(seed):
    return derivation_corpus(seed, 100)


@pytest.hookimpl(wrapper=True)
def pytest_runtest_makereport(item, call):
    report = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None and (report.when == "call" or report.failed):
        number, title = marker.args
        previous = _criteria.get(number, (title, True))[1]
        _criteria[number] = (title, previous and not report.failed)
    return report


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}: {title}")
