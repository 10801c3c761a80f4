import pathlib
import sys

import pytest

sys.path.insert(0, str(pathlib.Path(__file__).parent))

from rabi_spectrum.model import ModelParams  # noqa: E402

REFERENCE_SYM = [0.062956, 1.163604, 1.85076, 3.03523, 4.0569]
REFERENCE_ANTI = [-0.217805, 0.86095, 2.12701, 2.9567, 3.95113]


@pytest.fixture
def params():
    return ModelParams(0.7, 0.4)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is not None and module.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in module.RESULTS:
            terminalreporter.write_line(line)
