import sys
from math import radians, sqrt
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ncgears.assembler import assemble
from ncgears.centrodes import make_context
from ncgears.rack import RackProfile
from ncgears.transmission import circular, sinusoidal

B_EXAMPLE = 2 - sqrt(2)
CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def example_rack():
    return RackProfile.from_ratios(2.0, radians(20.0), 1.0, 1.2, 0.3)


@pytest.fixture(scope="session")
def sin_ctx():
    return make_context(sinusoidal(B_EXAMPLE), example_rack(), 14)


@pytest.fixture(scope="session")
def circ_ctx():
    return make_context(circular(), example_rack(), 20)


@pytest.fixture(scope="session")
def sin_pair(sin_ctx):
    return assemble(sin_ctx)


@pytest.fixture(scope="session")
def circ_pair(circ_ctx):
    return assemble(circ_ctx)


@pytest.fixture(scope="session")
def configs():
    return CONFIGS


ACCEPTANCE = []


def record_criterion(number, title, ok, detail):
    ACCEPTANCE.append((number, title, bool(ok), detail))
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number}. {title}: {detail}")
