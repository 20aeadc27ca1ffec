from __future__ import annotations

import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from morphdesign.document import parse_problem

FIXTURES = Path(__file__).parent.parent / "src" / "morphdesign" / "fixtures"


@pytest.fixture(scope="session")
def example1():
    return parse_problem((FIXTURES / "example1.json").read_bytes())


@pytest.fixture(scope="session")
def example2():
    return parse_problem((FIXTURES / "example2.json").read_bytes())


@pytest.fixture(scope="session")
def example3():
    return parse_problem((FIXTURES / "example3.json").read_bytes())


@pytest.fixture()
def rng():
    return random.Random(0xC0FFEE)
