"""Data models for triangular meshes over rectangles."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum, IntEnum
from typing import Dict, FrozenSet, Tuple

import numpy as np


class Frame(Enum):
    """Coordinate system used by a geometry query."""
    PHYSICAL = "physical"
    COMPUTATIONAL = "computational"


class Side(Enum):
    """Sides of the rectangular domain."""
    LEFT = "left"
    RIGHT = "right"
    BOTTOM = "bottom"
    TOP = "top"

    @classmethod
    def parse(cls, value) -> "Side":
        if isinstance(value, cls):
            return value
        normalized = str(value).strip().lower().replace("side-", "")
        return cls(normalized)


class BoundaryTag(IntEnum):
    """Per-node boundary classification."""
    INTERIOR = 0
    LEFT = 1
    RIGHT = 2
    BOTTOM = 3
    TOP = 4
    CORNER = 5


SIDE_TAGS: Dict[Side, BoundaryTag] = {
    Side.LEFT: BoundaryTag.LEFT,
    Side.RIGHT: BoundaryTag.RIGHT,
    Side.BOTTOM: BoundaryTag.BOTTOM,
    Side.TOP: BoundaryTag.TOP,
}


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle [x0, x1] x [z0, z1]."""
    x0: float
    x1: float
    z0: float
    z1: float

    @property
    def width(self) -> float:
        return self.x1 - self.x0

    @property
    def height(self) -> float:
        return self.z1 - self.z0

    @property
    def area(self) -> float:
        return self.width * self.height

    @classmethod
    def from_tuple(cls, bounds) -> "Rect":
        if isinstance(bounds, cls):
            return bounds
        x0, x1, z0, z1 = (float(v) for v in bounds)
        return cls(x0, x1, z0, z1)


@dataclass
class TriMesh:
    """
    Triangulated rectangle carrying physical and computational coordinates.

    ``nodes_xi`` is fixed at construction; only the moving-mesh cycle
    replaces ``nodes_x``. Nodes are numbered row by row, ``j * (nx + 1) + i``,
    and cell ``(i, j)`` owns triangles ``2 * (j * nx + i)`` and ``+ 1``.
    A ``mirrored`` mesh cuts the cells right of the x-midline along their
    SE-NW diagonal, so the triangulation is invariant under ``x -> x0 + x1 - x``.
    """
    nodes_x: np.ndarray
    nodes_xi: np.ndarray
    tris: np.ndarray
    boundary_tag: np.ndarray
    dirichlet_mask: np.ndarray
    nx: int
    nz: int
    bounds: Rect
    dirichlet_sides: FrozenSet[Side] = field(default_factory=frozenset)
    mirrored: bool = False
    _locators: Dict[str, object] = field(default_factory=dict, repr=False, compare=False)

    @property
    def n_nodes(self) -> int:
        return int(self.nodes_x.shape[0])

    @property
    def n_tris(self) -> int:
        return int(self.tris.shape[0])

    @property
    def h(self) -> float:
        """Characteristic size of the initial grid."""
        return max(self.bounds.width / self.nx, self.bounds.height / self.nz)

    @property
    def boundary_mask(self) -> np.ndarray:
        return self.boundary_tag != BoundaryTag.INTERIOR

    def coords(self, frame: Frame = Frame.PHYSICAL) -> np.ndarray:
        """Node coordinates in the requested frame."""
        return self.nodes_x if Frame(frame) is Frame.PHYSICAL else self.nodes_xi

    def node_index(self, i: int, j: int) -> int:
        return j * (self.nx + 1) + i

    def cell_triangles(self, i: int, j: int) -> Tuple[int, int]:
        first = 2 * (j * self.nx + i)
        return first, first + 1

    def side_nodes(self, side: Side) -> np.ndarray:
        """Node indices along a side, ordered by increasing coordinate, corners included."""
        side = Side.parse(side)
        if side is Side.BOTTOM:
            return np.array([self.node_index(i, 0) for i in range(self.nx + 1)])
        if side is Side.TOP:
            return np.array([self.node_index(i, self.nz) for i in range(self.nx + 1)])
        if side is Side.LEFT:
            return np.array([self.node_index(0, j) for j in range(self.nz + 1)])
        return np.array([self.node_index(self.nx, j) for j in range(self.nz + 1)])

    def move_to(self, nodes_x: np.ndarray) -> None:
        """Replace physical coordinates and drop cached point locators."""
        nodes_x = np.asarray(nodes_x, dtype=float)
        if nodes_x.shape != self.nodes_x.shape:
            raise ValueError(f"Expected node array of shape {self.nodes_x.shape}, got {nodes_x.shape}")
        self.nodes_x = nodes_x.copy()
        self._locators.pop(Frame.PHYSICAL.value, None)

    def copy(self) -> "TriMesh":
        return TriMesh(
            nodes_x=self.nodes_x.copy(),
            nodes_xi=self.nodes_xi,
            tris=self.tris,
            boundary_tag=self.boundary_tag,
            dirichlet_mask=self.dirichlet_mask,
            nx=self.nx,
            nz=self.nz,
            bounds=self.bounds,
            dirichlet_sides=self.dirichlet_sides,
            mirrored=self.mirrored,
        )

    def summary(self) -> Dict[str, object]:
        return {
            "nodes": self.n_nodes,
            "triangles": self.n_tris,
            "nx": self.nx,
            "nz": self.nz,
            "h": self.h,
            "dirichlet_sides": sorted(side.value for side in self.dirichlet_sides),
            "mirrored": self.mirrored,
        }

