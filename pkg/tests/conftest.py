import pytest

from toriclink.formats import corpus_names, parse_fan_file

CONE_NAMES = ["simplex_cone", "cube_cone", "square_pyramid_cone", "prism_cone"]
FAN_NAMES = ["cp1", "cp2", "cp3", "cp1xcp1", "hirzebruch1", "octahedron_normal"]

# acceptance lines collected during the run, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def corpus():
    return {name: parse_fan_file(name) for name in corpus_names()}


@pytest.fixture(scope="session")
def cones(corpus):
    return {n: corpus[n] for n in CONE_NAMES}


@pytest.fixture(scope="session")
def fans(corpus):
    return {n: corpus[n] for n in FAN_NAMES}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
