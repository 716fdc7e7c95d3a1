"""Shared catalog fixtures; enumeration runs once per session."""

from pathlib import Path

import pytest

from wfano import EnumerationQuery, enumerate_systems

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"


@pytest.fixture(scope="session")
def surface_catalog():
    return enumerate_systems(EnumerationQuery(num_weights=4, index=1))


@pytest.fixture(scope="session")
def threefold_catalog():
    return enumerate_systems(EnumerationQuery(num_weights=5, index=1))


@pytest.fixture(scope="session")
def fourfold_catalog():
    return enumerate_systems(EnumerationQuery(num_weights=6, index=1))
