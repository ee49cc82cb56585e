"""Quadrature rules on linear triangles."""

from __future__ import annotations

from enum import Enum
from typing import Callable, Tuple, Union

import numpy as np

from filmpy.shared.errors import InvalidArgument


class QuadratureRule(Enum):
    """Element quadrature: one-point centroid or three edge midpoints."""
    CENTROID = "centroid"
    MIDPOINT = "midpoint"

    @property
    def barycentric(self) -> np.ndarray:
        """Barycentric coordinates of the sample points, shape (q, 3)."""
        if self is QuadratureRule.CENTROID:
            return np.full((1, 3), 1.0 / 3.0)
        return np.array([
            [0.5, 0.5, 0.0],
            [0.0, 0.5, 0.5],
            [0.5, 0.0, 0.5],
        ])

    @property
    def weights(self) -> np.ndarray:
        """Weights as fractions of the element area (sum to 1)."""
        q = self.barycentric.shape[0]
        return np.full(q, 1.0 / q)


def sample_points(vertices: np.ndarray, rule: QuadratureRule) -> np.ndarray:
    """Physical quadrature points of one ``(3, 2)`` or many ``(T, 3, 2)`` triangles."""
    return np.einsum("qk,...kd->...qd", rule.barycentric, vertices)


def nodal_to_points(local_values: np.ndarray, rule: QuadratureRule) -> np.ndarray:
    """Linear interpolation of per-vertex values ``(..., 3)`` to the rule's points ``(..., q)``."""
    return np.einsum("qk,...k->...q", rule.barycentric, local_values)


def quadrature_element(
    integrand: Union[Callable, np.ndarray],
    vertices,
    rule: QuadratureRule = QuadratureRule.MIDPOINT,
) -> float:
    """
    Integrate over one triangle.

    Args:
        integrand: Either a vectorized ``f(x, z)`` or the three vertex values
            of a linear field (interpolated to the sample points)
        vertices: ``(3, 2)`` vertex coordinates
        rule: Quadrature rule

    Returns:
        Approximate integral; the midpoint rule is exact for quadratics.
    """
    rule = QuadratureRule(rule)
    vertices = np.asarray(vertices, dtype=float)
    if vertices.shape != (3, 2):
        raise InvalidArgument(f"Expected (3, 2) vertices, got {vertices.shape}")
    e1 = vertices[1] - vertices[0]
    e2 = vertices[2] - vertices[0]
    area = 0.5 * abs(e1[0] * e2[1] - e1[1] * e2[0])
    if callable(integrand):
        pts = sample_points(vertices, rule)
        values = np.broadcast_to(
            np.asarray(integrand(pts[:, 0], pts[:, 1]), dtype=float), (pts.shape[0],)
        )
    else:
        local = np.asarray(integrand, dtype=float)
        if local.shape != (3,):
            raise InvalidArgument(f"Expected 3 vertex values, got shape {local.shape}")
        values = nodal_to_points(local, rule)
    return float(area * np.dot(rule.weights, values))


def element_integrals(local_values: np.ndarray, areas: np.ndarray, rule: QuadratureRule,
                      transform: Callable = None) -> Tuple[np.ndarray, np.ndarray]:
    """Per-element ``∫ transform(u_h)`` for vertex values ``(T, 3)``.

    Returns the integrals (T,) and the transformed point values (T, q).
    """
    at_points = nodal_to_points(local_values, rule)
    if transform is not None:
        at_points = np.asarray(transform(at_points), dtype=float)
    return areas * (at_points @ rule.weights), at_points


__all__ = [
    "QuadratureRule",
    "element_integrals",
    "nodal_to_points",
    "quadrature_element",
    "sample_points",
]
