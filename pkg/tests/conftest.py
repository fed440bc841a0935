import pathlib
import random

import pytest

from qlts import load

FIXTURES = pathlib.Path(__file__).parent / "fixtures"

# lines appended by the acceptance suite, echoed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def fixture_path(name: str) -> pathlib.Path:
    return FIXTURES / f"{name}.qa"


def load_fixture(name: str, validate_kind: bool = True):
    return load(fixture_path(name), validate_kind=validate_kind)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
