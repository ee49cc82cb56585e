"""Structured triangulation of rectangles and mesh validation."""

from __future__ import annotations

import logging
import math
from collections import Counter
from typing import Iterable, Optional

import numpy as np

from filmpy.mesh.models import SIDE_TAGS, BoundaryTag, Frame, Rect, Side, TriMesh
from filmpy.shared.errors import DegenerateElement, InvalidArgument

_LOGGER = logging.getLogger(__name__)

AREA_RTOL = 1e-12


def generate_rect_mesh(
    nx: int,
    nz: int,
    bounds=(0.0, 1.0, 0.0, 1.0),
    dirichlet_sides: Optional[Iterable] = None,
    mirrored: bool = False,
) -> TriMesh:
    """Triangulate ``[x0, x1] x [z0, z1]`` with ``nx * nz`` cells split along SW-NE diagonals.

    With ``mirrored`` the cells right of the x-midline take the SE-NW diagonal
    instead, which makes the mesh symmetric about the midline (``nx`` must be even).

    Args:
        nx: Cell count along x
        nz: Cell count along z
        bounds: Rectangle as ``(x0, x1, z0, z1)`` or :class:`Rect`
        dirichlet_sides: Sides whose nodes carry a Dirichlet condition
        mirrored: Reflect the diagonal orientation across the x-midline

    Returns:
        TriMesh with computational coordinates on the unit square
    """
    if int(nx) != nx or int(nz) != nz or nx < 1 or nz < 1:
        raise InvalidArgument(f"Cell counts must be positive integers (nx={nx}, nz={nz})")
    nx, nz = int(nx), int(nz)
    if mirrored and nx % 2:
        raise InvalidArgument(f"A mirrored split needs an even nx (got {nx})")
    rect = Rect.from_tuple(bounds)
    if not (rect.x1 > rect.x0 and rect.z1 > rect.z0):
        raise InvalidArgument(f"Degenerate bounds {bounds}")
    sides = frozenset(Side.parse(side) for side in (dirichlet_sides or ()))

    xi = np.linspace(0.0, 1.0, nx + 1)
    eta = np.linspace(0.0, 1.0, nz + 1)
    XI, ETA = np.meshgrid(xi, eta)  # row j is constant eta
    nodes_xi = np.column_stack([XI.ravel(), ETA.ravel()])

    xs = np.linspace(rect.x0, rect.x1, nx + 1)
    if mirrored:
        xs[nx // 2 + 1:] = (rect.x0 + rect.x1) - xs[nx // 2 - 1::-1]
    zs = np.linspace(rect.z0, rect.z1, nz + 1)
    X, Z = np.meshgrid(xs, zs)
    nodes_x = np.column_stack([X.ravel(), Z.ravel()])

    i, j = np.meshgrid(np.arange(nx), np.arange(nz))
    sw = (j * (nx + 1) + i).ravel()
    se = sw + 1
    nw = sw + (nx + 1)
    ne = nw + 1
    tris = np.empty((2 * nx * nz, 3), dtype=np.int64)
    tris[0::2] = np.column_stack([sw, se, ne])
    tris[1::2] = np.column_stack([sw, ne, nw])
    if mirrored:
        right = (i >= nx // 2).ravel()
        tris[0::2][right] = np.column_stack([sw, se, nw])[right]
        tris[1::2][right] = np.column_stack([se, ne, nw])[right]

    tag = np.full(nodes_x.shape[0], BoundaryTag.INTERIOR, dtype=np.int64)
    on_side = {
        Side.LEFT: (XI.ravel() == 0.0),
        Side.RIGHT: (XI.ravel() == 1.0),
        Side.BOTTOM: (ETA.ravel() == 0.0),
        Side.TOP: (ETA.ravel() == 1.0),
    }
    count = np.zeros(nodes_x.shape[0], dtype=np.int64)
    for side, mask in on_side.items():
        tag[mask] = SIDE_TAGS[side]
        count += mask
    tag[count >= 2] = BoundaryTag.CORNER

    dirichlet = np.zeros(nodes_x.shape[0], dtype=bool)
    for side in sides:
        dirichlet |= on_side[side]

    # Pin boundary coordinates exactly onto their sides
    nodes_x[on_side[Side.LEFT], 0] = rect.x0
    nodes_x[on_side[Side.RIGHT], 0] = rect.x1
    nodes_x[on_side[Side.BOTTOM], 1] = rect.z0
    nodes_x[on_side[Side.TOP], 1] = rect.z1

    mesh = TriMesh(
        nodes_x=nodes_x,
        nodes_xi=nodes_xi,
        tris=tris,
        boundary_tag=tag,
        dirichlet_mask=dirichlet,
        nx=nx,
        nz=nz,
        bounds=rect,
        dirichlet_sides=sides,
        mirrored=bool(mirrored),
    )
    _LOGGER.debug("Generated %dx%d mesh on %s (%d nodes)", nx, nz, rect, mesh.n_nodes)
    return mesh


def signed_areas(mesh: TriMesh, frame: Frame = Frame.PHYSICAL) -> np.ndarray:
    """Signed area of every triangle in the given frame."""
    pts = mesh.coords(frame)[mesh.tris]
    e1 = pts[:, 1] - pts[:, 0]
    e2 = pts[:, 2] - pts[:, 0]
    return 0.5 * (e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0])


def validate_mesh(mesh: TriMesh, frames: Iterable[Frame] = (Frame.PHYSICAL, Frame.COMPUTATIONAL)) -> None:
    """Check positivity, area partition, side tags and conformity.

    Raises:
        DegenerateElement: A triangle has nonpositive area.
        InvalidArgument: Any other invariant is violated.
    """
    if mesh.tris.min() < 0 or mesh.tris.max() >= mesh.n_nodes:
        raise InvalidArgument("Triangle connectivity references missing nodes")

    for frame in frames:
        frame = Frame(frame)
        areas = signed_areas(mesh, frame)
        bad = np.flatnonzero(areas <= 0.0)
        if bad.size:
            raise DegenerateElement(int(bad[0]), float(areas[bad[0]]), frame.value)
        domain = mesh.bounds.area if frame is Frame.PHYSICAL else 1.0
        total = math.fsum(areas)
        if abs(total - domain) > AREA_RTOL * domain:
            raise InvalidArgument(
                f"Areas in {frame.value} frame sum to {total:.15g}, expected {domain:.15g}"
            )

    rect = mesh.bounds
    x, z = mesh.nodes_x[:, 0], mesh.nodes_x[:, 1]
    checks = {
        BoundaryTag.LEFT: x == rect.x0,
        BoundaryTag.RIGHT: x == rect.x1,
        BoundaryTag.BOTTOM: z == rect.z0,
        BoundaryTag.TOP: z == rect.z1,
    }
    for tag, exact in checks.items():
        members = mesh.boundary_tag == tag
        if not np.all(exact[members]):
            raise InvalidArgument(f"Nodes tagged {tag.name.lower()} are off their side")
    corners = np.flatnonzero(mesh.boundary_tag == BoundaryTag.CORNER)
    if corners.size != 4:
        raise InvalidArgument(f"Expected 4 corner nodes, found {corners.size}")

    edges = edge_counts(mesh)
    if any(count > 2 for count in edges.values()):
        raise InvalidArgument("Non-manifold edge found")
    boundary_edges = [edge for edge, count in edges.items() if count == 1]
    for a, b in boundary_edges:
        if not (mesh.boundary_mask[a] and mesh.boundary_mask[b]):
            raise InvalidArgument(f"Edge ({a}, {b}) is unshared but not on the boundary")


def edge_counts(mesh: TriMesh) -> Counter:
    """Number of triangles sharing each (sorted) edge."""
    counter: Counter = Counter()
    for tri in mesh.tris:
        a, b, c = (int(v) for v in tri)
        for edge in ((a, b), (b, c), (c, a)):
            counter[tuple(sorted(edge))] += 1
    return counter


__all__ = ["edge_counts", "generate_rect_mesh", "signed_areas", "validate_mesh"]
