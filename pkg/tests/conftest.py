"""FLEXT-Polar Test Configuration and Fixtures.

Shared fixtures for the unit, integration and e2e suites: isolated settings
environment, small hand-checkable codes, the (1024, 854) code and seeded
random generators.

Test Categories:
    - unit: single module behavior against hand examples and oracles
    - integration: API facade and cross-module chains
    - e2e: the ``flext-polar`` command line
    - slow: desk-scale Monte-Carlo acceptance runs (deselected by default)
"""

from __future__ import annotations

import os
from collections.abc import Generator
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from flext_polar import FlextPolarModels, construct_code

# the autouse env fixture is shared by generated examples
settings.register_profile(
    "flext-polar",
    deadline=None,
    suppress_health_check=[HealthCheck.function_scoped_fixture],
)
settings.load_profile("flext-polar")


# Test environment setup
@pytest.fixture(autouse=True)
def set_test_environment(monkeypatch: pytest.MonkeyPatch) -> Generator[None]:
    """Drop inherited FLEXT_POLAR_* settings so defaults apply."""
    for name in list(os.environ):
        if name.startswith("FLEXT_POLAR_"):
            monkeypatch.delenv(name)
    monkeypatch.setenv("FLEXT_POLAR_LOG_LEVEL", "WARNING")
    yield


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20250917)


@pytest.fixture
def code_2_1() -> FlextPolarModels.PolarCode:
    """Smallest code: u_0 frozen, u_1 free."""
    return construct_code(1, 1, 6.0)


@pytest.fixture
def code_8_4() -> FlextPolarModels.PolarCode:
    return construct_code(3, 4, 3.0)


@pytest.fixture
def code_16_8() -> FlextPolarModels.PolarCode:
    return construct_code(4, 8, 3.0)


@pytest.fixture
def code_64_32() -> FlextPolarModels.PolarCode:
    return construct_code(6, 32, 3.0)


@pytest.fixture(scope="session")
def code_1024_854() -> FlextPolarModels.PolarCode:
    """The (1024, 854) code at 6.0 dB design Eb/No."""
    return construct_code(10, 854, 6.0)


@pytest.fixture
def work_dir(tmp_path: Path) -> Path:
    """Temporary directory for code, frame and result files."""
    directory = tmp_path / "polar_files"
    directory.mkdir()
    return directory

