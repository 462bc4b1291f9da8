import pytest

from wavesource import PhysicalConfig, pulse_make
from wavesource.config import RunConfig
from wavesource.experiments import cached_kernels, table3

SEEDS = list(range(1, 12))


@pytest.fixture(scope="session")
def cfg():
    return PhysicalConfig()


@pytest.fixture(scope="session")
def pulse8():
    return pulse_make(8.0, 0.2)


@pytest.fixture(scope="session")
def pulse1():
    return pulse_make(1.0, 0.2)


@pytest.fixture(scope="session")
def kernels8(cfg, pulse8):
    return cached_kernels(cfg, pulse8, 20)


@pytest.fixture(scope="session")
def kernels1(cfg, pulse1):
    return cached_kernels(cfg, pulse1, 20)


@pytest.fixture(scope="session")
def run():
    return RunConfig()


@pytest.fixture(scope="session")
def table3_rows(run):
    return table3(run, SEEDS)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
