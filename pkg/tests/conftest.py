import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from truthpoint import load  # noqa: E402


@pytest.fixture(scope="session")
def core():
    return load("core")


@pytest.fixture(scope="session")
def vbsep():
    return load("vb-sep")


@pytest.fixture(scope="session")
def mcsep():
    return load("mc-sep")


@pytest.fixture(scope="session")
def failures():
    return load("theta-failures")


@pytest.fixture(scope="session")
def omega():
    return load("omega")


@pytest.fixture(scope="session")
def pk():
    return load("pk")
