import json
from pathlib import Path

import numpy as np
import pytest

from thermoforge.spectra import EngineSpec

HERE = Path(__file__).parent
FIXTURES = HERE / "fixtures"
FROZEN = json.loads((HERE / "oracles" / "frozen.json").read_text())


@pytest.fixture
def qubit_spec():
    """h1 = h2 = [0, 1] with beta = (0.5, 1.0)."""
    return EngineSpec.from_lists([0.0, 1.0], [0.0, 1.0], 0.5, 1.0)


@pytest.fixture
def frozen():
    return FROZEN


@pytest.fixture
def fixture_path():
    return lambda name: str(FIXTURES / name)


def ground(n):
    p = np.zeros(n)
    p[0] = 1.0
    return p


def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance

    if test_acceptance.LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
