"""Triangulated rectangles with physical and computational coordinates."""

from filmpy.mesh.generate import edge_counts, generate_rect_mesh, signed_areas, validate_mesh
from filmpy.mesh.geometry import (
    element_geometry,
    element_geometry_all,
    element_gradients_of,
    triangle_gradients,
)
from filmpy.mesh.locate import PointLocator, evaluate_field, get_locator, locate_point
from filmpy.mesh.models import BoundaryTag, Frame, Rect, Side, TriMesh

__all__ = [
    "BoundaryTag",
    "Frame",
    "PointLocator",
    "Rect",
    "Side",
    "TriMesh",
    "edge_counts",
    "element_geometry",
    "element_geometry_all",
    "element_gradients_of",
    "evaluate_field",
    "generate_rect_mesh",
    "get_locator",
    "locate_point",
    "signed_areas",
    "triangle_gradients",
    "validate_mesh",
]
