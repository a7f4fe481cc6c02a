import sys
from pathlib import Path

import pytest

from lra.algebra import LeibnizAlgebra, regular_representation

sys.path.insert(0, str(Path(__file__).parent))

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures" / "v1"

# lines printed by the acceptance suite, repeated in the terminal summary so
# they show up even when output capturing is on
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def nil2():
    """dim 2, [e_1, e_1] = e_2."""
    return LeibnizAlgebra.from_products(2, {(0, 0): {1: 1}})


@pytest.fixture
def nil2_reg(nil2):
    return regular_representation(nil2)


@pytest.fixture
def fixtures_dir():
    return FIXTURES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
