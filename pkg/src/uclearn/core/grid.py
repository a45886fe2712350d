"""Non-uniform axis-aligned grids over the constraint space."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from ..errors import DimensionMismatchError, OutOfRangeError, ValidationError

OUT_OF_RANGE = -1

BINARY = "binary"
PROBABILISTIC = "probabilistic"


@dataclass(frozen=True)
class GridSpec:
    """Per-dimension strictly increasing cell edges; half-open bins.

    A point exactly on an interior edge belongs to the higher-index bin;
    a point on or beyond the top edge is out of range.  Cell ids ravel
    the per-dimension bin indices in C order.
    """

    edges: tuple[np.ndarray, ...]

    def __post_init__(self):
        edges = tuple(np.asarray(e, dtype=float) for e in self.edges)
        for e in edges:
            e.setflags(write=False)
            if e.ndim != 1 or e.shape[0] < 2:
                raise ValidationError("each dimension needs at least two edges")
            if not np.all(np.diff(e) > 0):
                raise ValidationError("edges must be strictly increasing")
        object.__setattr__(self, "edges", edges)

    @staticmethod
    def uniform(lo, hi, nbins) -> "GridSpec":
        lo = np.atleast_1d(np.asarray(lo, dtype=float))
        hi = np.atleast_1d(np.asarray(hi, dtype=float))
        nbins = np.broadcast_to(np.asarray(nbins, dtype=int), lo.shape)
        return GridSpec(tuple(np.linspace(lo[i], hi[i], nbins[i] + 1) for i in range(lo.shape[0])))

    @property
    def dim(self) -> int:
        return len(self.edges)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(e.shape[0] - 1 for e in self.edges)

    @property
    def total_cells(self) -> int:
        out = 1
        for s in self.shape:
            out *= s
        return out

    def signature(self) -> str:
        h = hashlib.sha256()
        for e in self.edges:
            h.update(e.tobytes())
        return h.hexdigest()[:16]

    def __eq__(self, other) -> bool:
        if not isinstance(other, GridSpec):
            return NotImplemented
        return self.dim == other.dim and all(
            a.shape == b.shape and np.array_equal(a, b) for a, b in zip(self.edges, other.edges)
        )

    def __hash__(self):
        return hash(self.signature())

    def cell_index(self, points: np.ndarray) -> np.ndarray:
        """Cell id per point, OUT_OF_RANGE for points off the grid."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        if pts.shape[1] != self.dim:
            raise DimensionMismatchError(
                f"points have dimension {pts.shape[1]}, grid has {self.dim}"
            )
        ids = np.zeros(pts.shape[0], dtype=np.int64)
        oob = np.zeros(pts.shape[0], dtype=bool)
        for j, e in enumerate(self.edges):
            b = np.searchsorted(e, pts[:, j], side="right") - 1
            oob |= (b < 0) | (b >= e.shape[0] - 1)
            ids = ids * (e.shape[0] - 1) + np.clip(b, 0, e.shape[0] - 2)
        ids[oob] = OUT_OF_RANGE
        return ids if np.ndim(points) > 1 else ids[0]

    def unravel(self, ids) -> np.ndarray:
        return np.stack(np.unravel_index(np.asarray(ids, dtype=np.int64), self.shape), axis=-1)

    def cell_center(self, ids) -> np.ndarray:
        idx = np.atleast_2d(self.unravel(ids))
        out = np.empty(idx.shape, dtype=float)
        for j, e in enumerate(self.edges):
            out[:, j] = 0.5 * (e[idx[:, j]] + e[idx[:, j] + 1])
        return out if np.ndim(ids) > 0 else out[0]

    def cell_bounds(self, cell_id: int) -> tuple[np.ndarray, np.ndarray]:
        idx = self.unravel(int(cell_id))
        lo = np.array([e[i] for e, i in zip(self.edges, idx)])
        hi = np.array([e[i + 1] for e, i in zip(self.edges, idx)])
        return lo, hi

    def neighbor_pairs(self) -> np.ndarray:
        """Pairs (i, j), i < j, of cells adjacent along one axis."""
        pairs = []
        shape = self.shape
        ids = np.arange(self.total_cells, dtype=np.int64).reshape(shape)
        for axis in range(self.dim):
            a = np.moveaxis(ids, axis, 0)
            pairs.append(np.stack([a[:-1].ravel(), a[1:].ravel()], axis=1))
        if not pairs:
            return np.empty((0, 2), dtype=np.int64)
        return np.concatenate(pairs, axis=0)


def cellset(ids) -> np.ndarray:
    """Sorted, deduplicated int64 array of cell ids."""
    arr = np.unique(np.asarray(ids, dtype=np.int64))
    if arr.size and arr[0] < 0:
        raise ValidationError("cell sets cannot contain out-of-range markers")
    arr.setflags(write=False)
    return arr


def grid_points(points: np.ndarray, grid: GridSpec, policy: str = "strict") -> np.ndarray:
    """Cell set of the given constraint-space points.

    policy 'strict' raises OutOfRangeError on off-grid points; 'ignore'
    drops them.
    """
    ids = np.atleast_1d(grid.cell_index(points))
    if policy == "strict":
        if np.any(ids == OUT_OF_RANGE):
            bad = int(np.argmax(ids == OUT_OF_RANGE))
            raise OutOfRangeError(f"point index {bad} lies outside the grid")
    elif policy == "ignore":
        ids = ids[ids != OUT_OF_RANGE]
    else:
        raise ValidationError(f"unknown out-of-range policy {policy!r}")
    return cellset(ids)


@dataclass(frozen=True)
class OccupancyEstimate:
    """Per-cell unsafeness, binary {0,1} or probabilistic [0,1]."""

    grid: GridSpec
    mode: str
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float).copy()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        if self.mode not in (BINARY, PROBABILISTIC):
            raise ValidationError(f"unknown occupancy mode {self.mode!r}")
        if values.shape != (self.grid.total_cells,):
            raise DimensionMismatchError(
                f"values length {values.shape} != cell count {self.grid.total_cells}"
            )
        if self.mode == BINARY:
            if not np.all((values == 0.0) | (values == 1.0)):
                raise ValidationError("binary occupancy values must be 0 or 1")
        elif np.any(values < -1e-12) or np.any(values > 1.0 + 1e-12):
            raise ValidationError("probabilistic occupancy values must lie in [0, 1]")

    def unsafe_cells(self, threshold: float = 0.5) -> np.ndarray:
        return cellset(np.nonzero(self.values > threshold)[0])
