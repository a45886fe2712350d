"""Feature maps from states into the constraint space."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..errors import DimensionMismatchError, ValidationError


@dataclass(frozen=True)
class FeatureMap:
    """Deterministic map phi from a state to a constraint-space point.

    Kinds:
      select-dims   identity on a subset of state dimensions
      grid-slope    magnitude of the gradient of a tabulated elevation
                    map, central finite differences on the table
      callable      user-supplied vectorized function
    """

    kind: str
    dims: tuple[int, ...] | None = None
    elevation: np.ndarray | None = None
    origin: np.ndarray | None = None
    spacing: float | None = None
    fn: Callable[[np.ndarray], np.ndarray] | None = None
    output_dim: int = 0

    @staticmethod
    def select_dims(dims) -> "FeatureMap":
        dims = tuple(int(d) for d in dims)
        return FeatureMap(kind="select-dims", dims=dims, output_dim=len(dims))

    @staticmethod
    def grid_slope(elevation: np.ndarray, origin, spacing: float) -> "FeatureMap":
        elevation = np.asarray(elevation, dtype=float)
        if elevation.ndim != 2:
            raise ValidationError("elevation table must be 2-D")
        return FeatureMap(
            kind="grid-slope",
            elevation=elevation,
            origin=np.asarray(origin, dtype=float),
            spacing=float(spacing),
            output_dim=1,
        )

    @staticmethod
    def from_callable(fn, output_dim: int) -> "FeatureMap":
        return FeatureMap(kind="callable", fn=fn, output_dim=int(output_dim))

    def __call__(self, states: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(states, dtype=float))
        if self.kind == "select-dims":
            if max(self.dims) >= pts.shape[1]:
                raise DimensionMismatchError("selected dimension beyond state size")
            out = pts[:, list(self.dims)]
        elif self.kind == "grid-slope":
            out = self._slope(pts)[:, None]
        elif self.kind == "callable":
            out = np.atleast_2d(np.asarray(self.fn(pts), dtype=float))
            if out.shape[0] != pts.shape[0]:
                out = out.T
            if out.shape != (pts.shape[0], self.output_dim):
                raise DimensionMismatchError(
                    f"callable feature returned shape {out.shape}, "
                    f"expected ({pts.shape[0]}, {self.output_dim})"
                )
        else:
            raise ValidationError(f"unknown feature kind {self.kind!r}")
        return out if np.ndim(states) > 1 else out[0]

    def _slope(self, pts: np.ndarray) -> np.ndarray:
        H = self.elevation
        rows, cols = H.shape
        # nearest table node, gradients by central differences clamped at
        # the table border
        ij = np.rint((pts[:, :2] - self.origin) / self.spacing).astype(int)
        i = np.clip(ij[:, 0], 0, rows - 1)
        j = np.clip(ij[:, 1], 0, cols - 1)
        ip, im = np.minimum(i + 1, rows - 1), np.maximum(i - 1, 0)
        jp, jm = np.minimum(j + 1, cols - 1), np.maximum(j - 1, 0)
        dx = (H[ip, j] - H[im, j]) / ((ip - im) * self.spacing)
        dy = (H[i, jp] - H[i, jm]) / ((jp - jm) * self.spacing)
        return np.hypot(dx, dy)
