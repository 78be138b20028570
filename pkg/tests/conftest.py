import pytest

from lakepeg import insert_water, translate
from lakepeg.fixtures import load_grammar, sample_program


@pytest.fixture(scope="session")
def blocks():
    return load_grammar("blocks")


@pytest.fixture(scope="session")
def blocks_intermediate(blocks):
    return insert_water(blocks)


@pytest.fixture(scope="session")
def blocks_normal(blocks):
    return translate(blocks)[0]


@pytest.fixture(scope="session")
def if_lakes_normal():
    return translate(load_grammar("if_lakes"))[0]


@pytest.fixture(scope="session")
def if_water_normal():
    return translate(load_grammar("if_water"))[0]


@pytest.fixture(scope="session")
def program():
    return sample_program()


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
