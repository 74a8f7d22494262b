"""
Pytest configuration and fixtures
"""

from collections.abc import AsyncGenerator

import numpy as np
import pytest
from fastapi.testclient import TestClient
from httpx import ASGITransport, AsyncClient

from app.services.solvers import DEFAULT_CONFIG, Breakpoints, SolverConfig, get_breakpoints
from main import app


@pytest.fixture
def test_client() -> TestClient:
    """Synchronous test client for FastAPI"""
    return TestClient(app)


@pytest.fixture
async def async_client() -> AsyncGenerator[AsyncClient, None]:
    """Async test client for FastAPI"""
    async with AsyncClient(
        transport=ASGITransport(app=app), base_url="http://test"
    ) as client:
        yield client


@pytest.fixture
def solver_config() -> SolverConfig:
    """Default solver tolerances"""
    return DEFAULT_CONFIG


@pytest.fixture
def breakpoints(solver_config) -> Breakpoints:
    """Solved constants, shared through the module-level cache"""
    return get_breakpoints(solver_config)


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator for sampled checks"""
    return np.random.default_rng(42)
