"""Test fixtures shared across unit tests."""

import logging

import pytest

from filmpy.mesh.generate import generate_rect_mesh
from filmpy.shared.output import set_output_mode, OutputMode


@pytest.fixture(autouse=True)
def reset_output_mode():
    """Ensure each test starts (and ends) in PRETTY output mode."""
    set_output_mode(OutputMode.PRETTY)
    yield
    set_output_mode(OutputMode.PRETTY)


@pytest.fixture(autouse=True)
def reset_run_log():
    """Drop run-log handlers a command may have attached to the package logger."""
    yield
    root = logging.getLogger("filmpy")
    for handler in list(root.handlers):
        root.removeHandler(handler)
        handler.close()
    root.propagate = True
    root.setLevel(logging.NOTSET)


@pytest.fixture
def make_mesh():
    """Factory for structured rectangle meshes."""
    def factory(nx=4, nz=4, bounds=(0.0, 1.0, 0.0, 1.0), dirichlet_sides=None):
        return generate_rect_mesh(nx, nz, bounds, dirichlet_sides)
    return factory


@pytest.fixture
def unit_mesh(make_mesh):
    """8x8 mesh of the unit square, all sides Neumann."""
    return make_mesh(8, 8)
