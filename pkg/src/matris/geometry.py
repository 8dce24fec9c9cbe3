"""Planar surface layouts, distances, the near-field boundary, and the
feasible movement region of the movable antenna.

Coordinate convention: the transmissive surface lies in the plane z = 0,
centered at the origin. The movable antenna sits on the z < 0 side, the user
on the z > 0 side, with the boresight axis along z.
"""

from dataclasses import dataclass

import numpy as np


def position(x: float, y: float, z: float) -> np.ndarray:
    """3D position vector in meters."""
    p = np.array([x, y, z], dtype=float)
    if not np.all(np.isfinite(p)):
        raise ValueError("position coordinates must be finite")
    return p


@dataclass(frozen=True)
class TrisGeometry:
    """Uniform planar grid of transmissive elements in the z = 0 plane.

    ``elements`` is (N, 3) in row-major order starting from the most-negative
    (x, y) corner. ``side_count`` is None for non-square custom layouts
    (only used by small-scale oracles); standard grids come from
    :func:`build_tris_grid`.
    """

    side_count: int | None
    spacing: float
    elements: np.ndarray

    @property
    def n_elements(self) -> int:
        return self.elements.shape[0]

    @classmethod
    def from_elements(cls, elements: np.ndarray, spacing: float) -> "TrisGeometry":
        """Wrap an explicit (N, 3) element layout (z must be 0)."""
        elements = np.asarray(elements, dtype=float)
        if elements.ndim != 2 or elements.shape[1] != 3:
            raise ValueError("elements must have shape (N, 3)")
        if np.any(elements[:, 2] != 0.0):
            raise ValueError("all elements must lie in the z = 0 plane")
        side = int(round(np.sqrt(elements.shape[0])))
        side_count = side if side * side == elements.shape[0] else None
        return cls(side_count=side_count, spacing=float(spacing), elements=elements)


def build_tris_grid(side_count: int, spacing: float) -> TrisGeometry:
    """Centered side_count x side_count grid with the given element spacing.

    Element order is row-major from the most-negative (x, y) corner, rows
    advancing in y.
    """
    if side_count < 1:
        raise ValueError(f"side_count must be >= 1, got {side_count}")
    if spacing <= 0:
        raise ValueError(f"spacing must be > 0, got {spacing}")
    offsets = (np.arange(side_count) - (side_count - 1) / 2.0) * spacing
    xx, yy = np.meshgrid(offsets, offsets, indexing="xy")
    elements = np.column_stack(
        [xx.ravel(), yy.ravel(), np.zeros(side_count * side_count)]
    )
    return TrisGeometry(side_count=side_count, spacing=float(spacing), elements=elements)


def distance(p: np.ndarray, q: np.ndarray) -> float:
    """Euclidean distance in meters."""
    return float(np.linalg.norm(np.asarray(p, dtype=float) - np.asarray(q, dtype=float)))


def rayleigh_distance(geometry: TrisGeometry, wavelength: float) -> float:
    """Near-field boundary 2*D_aper^2 / lambda with D_aper = sqrt(2N)*spacing.

    Equals 4*N*spacing^2 / lambda.
    """
    if wavelength <= 0:
        raise ValueError(f"wavelength must be > 0, got {wavelength}")
    n = geometry.n_elements
    return 4.0 * n * geometry.spacing**2 / wavelength


@dataclass(frozen=True)
class MaRegion:
    """Square feasible region for the movable antenna.

    Lies in the plane z = center.z (parallel to the surface), side length
    ``side`` meters, closed boundary.
    """

    center: np.ndarray
    side: float

    def __post_init__(self):
        if self.side <= 0:
            raise ValueError(f"region side must be > 0, got {self.side}")
        object.__setattr__(self, "center", np.asarray(self.center, dtype=float))


def in_region(t: np.ndarray, region: MaRegion) -> bool:
    """True iff t lies in the closed square region (z fixed to the region plane)."""
    t = np.asarray(t, dtype=float)
    c = region.center
    half = region.side / 2.0
    return (
        t[2] == c[2]
        and abs(t[0] - c[0]) <= half
        and abs(t[1] - c[1]) <= half
    )


@dataclass(frozen=True)
class MaState:
    """Movable-antenna position together with its feasible region."""

    position: np.ndarray
    region: MaRegion

    def __post_init__(self):
        object.__setattr__(self, "position", np.asarray(self.position, dtype=float))
        if not in_region(self.position, self.region):
            raise ValueError("MA position lies outside its feasible region")


def random_position(region: MaRegion, rng: np.random.Generator) -> np.ndarray:
    """Uniform random point in the region (z fixed to the region plane)."""
    half = region.side / 2.0
    dx, dy = rng.uniform(-half, half, size=2)
    return np.array([region.center[0] + dx, region.center[1] + dy, region.center[2]])
