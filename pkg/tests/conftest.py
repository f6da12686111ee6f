import sys
from importlib.resources import files
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ifdea.dataio import parse_dataset, parse_policy  # noqa: E402

DATA = files("ifdea.data")


@pytest.fixture(scope="session")
def police_text():
    return DATA.joinpath("indian_police_2018.csv").read_text()


@pytest.fixture(scope="session")
def police_raw(police_text):
    return parse_dataset(police_text)


@pytest.fixture(scope="session")
def paper_config():
    return parse_policy(DATA.joinpath("paper.policy").read_text())


@pytest.fixture(scope="session")
def data_paths():
    base = Path(__file__).resolve().parents[1] / "src" / "ifdea" / "data"
    return base / "indian_police_2018.csv", base / "paper.policy"


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    def record(criterion: str, passed: bool, detail: str = "") -> None:
        ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] {criterion}" + (f" -- {detail}" if detail else ""))

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
