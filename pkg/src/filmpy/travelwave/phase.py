"""Phase-plane curves of traveling-wave profiles."""

from __future__ import annotations

from typing import List, Tuple

import numpy as np

from filmpy.travelwave.models import TWProfile

SIMPLE_CURVE_RESOLUTION = 1e-3


def phase_plane(profile: TWProfile) -> List[Tuple[float, float]]:
    """``(u, u')`` pairs ordered by zeta."""
    return [(float(u), float(du)) for u, du in zip(profile.u, profile.du)]


def _thin(points: np.ndarray, resolution: float) -> np.ndarray:
    kept = [points[0]]
    for point in points[1:]:
        if np.hypot(*(point - kept[-1])) >= resolution:
            kept.append(point)
    if len(kept) > 1 and not np.array_equal(kept[-1], points[-1]):
        kept[-1] = points[-1]
    return np.asarray(kept)


def _cross(o: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a[..., 0] - o[..., 0]) * (b[..., 1] - o[..., 1]) - (a[..., 1] - o[..., 1]) * (b[..., 0] - o[..., 0])


def is_simple_curve(points, resolution: float = SIMPLE_CURVE_RESOLUTION) -> bool:
    """True when the polyline has no proper self-intersection.

    Vertices closer than ``resolution`` are merged first, so sub-resolution
    spiralling into an end state does not count as crossing.
    """
    pts = _thin(np.asarray(points, dtype=float).reshape(-1, 2), resolution)
    n = pts.shape[0] - 1
    if n < 3:
        return True
    a, b = pts[:-1], pts[1:]
    for i in range(n - 2):
        c, d = a[i + 2:], b[i + 2:]
        d1 = _cross(c, d, a[i])
        d2 = _cross(c, d, b[i])
        d3 = _cross(a[i], b[i], c)
        d4 = _cross(a[i], b[i], d)
        if np.any((d1 * d2 < 0.0) & (d3 * d4 < 0.0)):
            return False
    return True


__all__ = ["SIMPLE_CURVE_RESOLUTION", "is_simple_curve", "phase_plane"]
