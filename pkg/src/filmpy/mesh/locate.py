"""
Point location and barycentric evaluation on triangle meshes.

Small meshes are scanned brute force; above ``BIN_THRESHOLD`` triangles a
uniform background bin grid narrows the candidates. Both paths pick the
triangle that maximises the smallest barycentric coordinate (ties go to the
lowest index), so they return identical results.
"""

from __future__ import annotations

from typing import List, Tuple

import numpy as np

from filmpy.mesh.models import Frame, TriMesh

BIN_THRESHOLD = 5000
INSIDE_TOL = 1e-12
_CHUNK = 256


class PointLocator:
    """Cached affine inverses of all triangles of one mesh frame."""

    def __init__(self, mesh: TriMesh, frame: Frame = Frame.PHYSICAL, use_bins: bool = None):
        self.frame = Frame(frame)
        coords = mesh.coords(self.frame)
        pts = coords[mesh.tris]
        self.origin = pts[:, 0, :]
        e1 = pts[:, 1, :] - self.origin
        e2 = pts[:, 2, :] - self.origin
        det = e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0]
        inv = np.empty((pts.shape[0], 2, 2))
        with np.errstate(divide="ignore", invalid="ignore"):
            inv[:, 0, 0] = e2[:, 1] / det
            inv[:, 0, 1] = -e2[:, 0] / det
            inv[:, 1, 0] = -e1[:, 1] / det
            inv[:, 1, 1] = e1[:, 0] / det
        self.inverse = inv
        self.n_tris = pts.shape[0]
        if use_bins is None:
            use_bins = self.n_tris >= BIN_THRESHOLD
        self.use_bins = bool(use_bins)
        if self.use_bins:
            self._build_bins(pts)

    def _build_bins(self, pts: np.ndarray) -> None:
        lo = pts.min(axis=(0, 1))
        hi = pts.max(axis=(0, 1))
        span = np.maximum(hi - lo, 1e-300)
        pad = 1e-9 * span.max()
        per_axis = max(1, int(np.sqrt(self.n_tris / 2.0)))
        self._lo = lo
        self._nbins = np.array([per_axis, per_axis])
        self._cell = span / self._nbins
        tri_lo = self._bin_of(pts.min(axis=1) - pad)
        tri_hi = self._bin_of(pts.max(axis=1) + pad)
        buckets: List[List[int]] = [[] for _ in range(per_axis * per_axis)]
        for t in range(self.n_tris):
            for bj in range(tri_lo[t, 1], tri_hi[t, 1] + 1):
                for bi in range(tri_lo[t, 0], tri_hi[t, 0] + 1):
                    buckets[bj * per_axis + bi].append(t)
        self._buckets = [np.asarray(bucket, dtype=np.int64) for bucket in buckets]

    def _bin_of(self, p: np.ndarray) -> np.ndarray:
        idx = np.floor((p - self._lo) / self._cell).astype(np.int64)
        return np.clip(idx, 0, self._nbins - 1)

    def barycentric(self, p: np.ndarray, candidates: np.ndarray = None) -> np.ndarray:
        """Unclipped barycentric coordinates of ``p`` in each candidate triangle."""
        if candidates is None:
            d = p - self.origin
            inv = self.inverse
        else:
            d = p - self.origin[candidates]
            inv = self.inverse[candidates]
        l1 = inv[:, 0, 0] * d[:, 0] + inv[:, 0, 1] * d[:, 1]
        l2 = inv[:, 1, 0] * d[:, 0] + inv[:, 1, 1] * d[:, 1]
        return np.column_stack([1.0 - l1 - l2, l1, l2])

    def locate(self, p) -> Tuple[int, np.ndarray]:
        """Return (triangle index, clipped barycentric coordinates) for one point."""
        p = np.asarray(p, dtype=float)
        if self.use_bins:
            b = self._bin_of(p)
            candidates = self._buckets[b[1] * self._nbins[0] + b[0]]
            if candidates.size:
                bary = self.barycentric(p, candidates)
                scores = bary.min(axis=1)
                k = int(np.argmax(scores))
                if scores[k] >= -INSIDE_TOL:
                    return int(candidates[k]), _clip(bary[k])
        bary = self.barycentric(p)
        scores = bary.min(axis=1)
        k = int(np.argmax(scores))
        return k, _clip(bary[k])

    def locate_many(self, points: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Vectorized :meth:`locate`; returns indices (P,) and coordinates (P, 3)."""
        points = np.asarray(points, dtype=float).reshape(-1, 2)
        n = points.shape[0]
        tri = np.empty(n, dtype=np.int64)
        bary = np.empty((n, 3))
        if self.use_bins:
            for k in range(n):
                tri[k], bary[k] = self.locate(points[k])
            return tri, bary
        for start in range(0, n, _CHUNK):
            block = points[start:start + _CHUNK]
            d = block[:, np.newaxis, :] - self.origin[np.newaxis, :, :]
            l1 = np.einsum("tj,ptj->pt", self.inverse[:, 0, :], d)
            l2 = np.einsum("tj,ptj->pt", self.inverse[:, 1, :], d)
            l0 = 1.0 - l1 - l2
            scores = np.minimum(np.minimum(l0, l1), l2)
            best = np.argmax(scores, axis=1)
            rows = np.arange(block.shape[0])
            tri[start:start + block.shape[0]] = best
            raw = np.column_stack([l0[rows, best], l1[rows, best], l2[rows, best]])
            bary[start:start + block.shape[0]] = _clip_rows(raw)
        return tri, bary


def _clip(bary: np.ndarray) -> np.ndarray:
    return _clip_rows(bary[np.newaxis])[0]


def _clip_rows(bary: np.ndarray) -> np.ndarray:
    clipped = np.clip(bary, 0.0, 1.0)
    return clipped / clipped.sum(axis=1, keepdims=True)


def get_locator(mesh: TriMesh, frame: Frame = Frame.PHYSICAL) -> PointLocator:
    """Locator cached on the mesh (dropped when the physical nodes move)."""
    key = Frame(frame).value
    locator = mesh._locators.get(key)
    if locator is None:
        locator = PointLocator(mesh, frame)
        mesh._locators[key] = locator
    return locator


def locate_point(mesh: TriMesh, p, frame: Frame = Frame.PHYSICAL) -> Tuple[int, np.ndarray]:
    """Containing (or nearest) triangle of ``p`` with clipped barycentric coordinates."""
    return get_locator(mesh, frame).locate(p)


def evaluate_field(mesh: TriMesh, values: np.ndarray, points: np.ndarray,
                   frame: Frame = Frame.PHYSICAL) -> np.ndarray:
    """Piecewise-linear evaluation of a nodal field at arbitrary points."""
    tri, bary = get_locator(mesh, frame).locate_many(points)
    local = np.asarray(values, dtype=float)[mesh.tris[tri]]
    return np.einsum("pk,pk->p", local, bary)


__all__ = [
    "BIN_THRESHOLD",
    "PointLocator",
    "evaluate_field",
    "get_locator",
    "locate_point",
]
