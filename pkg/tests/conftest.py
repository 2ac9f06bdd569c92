import numpy as np
import pytest

from imgql.synthetic import make_case, write_case

_ACCEPTANCE: list[str] = []


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def acceptance_log():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)


@pytest.fixture
def fixture_case(tmp_path):
    case = make_case(512, 384, seed=7)
    write_case(tmp_path / "data", "fx1", case)
    return case, tmp_path / "data"
