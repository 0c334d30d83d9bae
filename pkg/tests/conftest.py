import pytest

from typenfuzzy import FELIX_FDL
from typenfuzzy.fdl import load_text


@pytest.fixture(scope="session")
def felix_source():
    return FELIX_FDL.read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def felix(felix_source):
    return load_text(felix_source)
