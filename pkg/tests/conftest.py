import pathlib

import pytest

PROFILES_DIR = pathlib.Path(__file__).resolve().parent.parent / "profiles"


@pytest.fixture(scope="session")
def profiles_dir() -> pathlib.Path:
    return PROFILES_DIR
