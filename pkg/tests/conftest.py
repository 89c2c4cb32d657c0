"""Shared fixtures."""

import random

import pytest

from veccoh import ModuleSpec, VectorField
from veccoh.polyfields import Poly


@pytest.fixture
def rng():
    """A seeded random source; every test sees the same draws."""
    return random.Random(20240611)


@pytest.fixture
def x2():
    """Coordinate functions x1, x2 on R^2 (0-based axes 0 and 1)."""
    return Poly.variable(2, 0), Poly.variable(2, 1)


@pytest.fixture
def euler2():
    return VectorField.euler(2)


@pytest.fixture
def function_spec():
    """Scalar differential operators of order <= 1 on R^2."""
    return ModuleSpec(2, "function", 0, 0, 1)
