"""
Pytest configuration and shared fixtures for Witt Tensor tests.
"""

import pytest

from witt_tensor.algebra.gmodules import natural_module, tensor_square_natural
from witt_tensor.algebra.tensor_pipeline import build_decomposition
from witt_tensor.algebra.witt_algebra import WittAlgebra
from witt_tensor.schemas import VerificationConfig


# ============================================================================
# FIXTURES - Algebras and Modules
# ============================================================================

@pytest.fixture(scope="session")
def algebra5():
    """Fixture providing W(1) over F_5."""
    return WittAlgebra(5)


@pytest.fixture(scope="session")
def algebra7():
    """Fixture providing W(1) over F_7."""
    return WittAlgebra(7)


@pytest.fixture(scope="session")
def natural5(algebra5):
    """Fixture providing A(1) for p = 5."""
    return natural_module(algebra5)


@pytest.fixture(scope="session")
def a2_5(algebra5):
    """Fixture providing the tensor square A_(2) for p = 5."""
    return tensor_square_natural(algebra5)


# ============================================================================
# FIXTURES - Tensor Square Decompositions
# ============================================================================

@pytest.fixture(scope="session")
def decomposition5(algebra5):
    """Split, top levels and chains of A_(2) for p = 5."""
    return build_decomposition(5, algebra5)


@pytest.fixture(scope="session")
def decomposition7(algebra7):
    """Split, top levels and chains of A_(2) for p = 7."""
    return build_decomposition(7, algebra7)


@pytest.fixture
def quick_config():
    """Configuration that keeps randomized checks short."""
    return VerificationConfig(shuffles=2, linalg_trials=5, seed=3)


# ============================================================================
# PYTEST CONFIGURATION
# ============================================================================

def pytest_configure(config):
    """Configure pytest with custom markers."""
    config.addinivalue_line(
        "markers", "unit: Unit tests of a single function or class"
    )
    config.addinivalue_line(
        "markers", "integration: Tests that run a whole pipeline for one prime"
    )
    config.addinivalue_line(
        "markers", "slow: Tests for primes above 7"
    )
