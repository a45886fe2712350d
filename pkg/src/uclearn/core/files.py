"""Structured text formats: trajectory lists, occupancy tables, grids.

Trajectory files use shortest round-trip float formatting (Python repr),
so integers and dyadic rationals survive a write/read cycle bit-exactly.
Occupancy tables round values to 9 significant digits per the format
contract.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import FileFormatError, ValidationError
from .grid import BINARY, PROBABILISTIC, GridSpec, OccupancyEstimate
from .trajectory import Trajectory

TRAJ_HEADER = "# uclearn trajectory list v1"
OCC_HEADER = "# uclearn occupancy v1"
GRID_HEADER = "# uclearn grid v1"


@dataclass
class TrajectoryRecord:
    """One trajectory plus its optional labeling metadata."""

    trajectory: Trajectory
    label: str | None = None  # "safe" | "unsafe"
    p: float | None = None
    cost: float | None = None


def _fmt(x: float) -> str:
    return repr(float(x))


def _fmt_row(row) -> str:
    return " ".join(_fmt(v) for v in row)


def write_trajectories(path, records: list[TrajectoryRecord]) -> None:
    lines = [TRAJ_HEADER]
    for rec in records:
        t = rec.trajectory
        lines.append("trajectory")
        lines.append(f"n {t.n}")
        lines.append(f"m {t.m}")
        lines.append(f"T {t.T}")
        if t.dt is not None:
            lines.append(f"dt {_fmt(t.dt)}")
        if rec.label is not None:
            if rec.label not in ("safe", "unsafe"):
                raise ValidationError(f"label must be safe|unsafe, got {rec.label!r}")
            lines.append(f"label {rec.label}")
        if rec.p is not None:
            lines.append(f"p {_fmt(rec.p)}")
        if rec.cost is not None:
            lines.append(f"cost {_fmt(rec.cost)}")
        lines.append("states")
        lines.extend(_fmt_row(row) for row in t.states)
        lines.append("controls")
        lines.extend(_fmt_row(row) for row in t.controls)
        lines.append("end")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_trajectories(path) -> list[TrajectoryRecord]:
    with open(path) as fh:
        lines = fh.read().splitlines()
    records: list[TrajectoryRecord] = []
    i = 0

    def fail(lineno, msg):
        raise FileFormatError(path, lineno + 1, msg)

    while i < len(lines):
        line = lines[i].strip()
        if not line or line.startswith("#"):
            i += 1
            continue
        if line != "trajectory":
            fail(i, f"expected 'trajectory', got {line!r}")
        i += 1
        meta: dict[str, str] = {}
        while i < len(lines) and lines[i].strip() != "states":
            parts = lines[i].split()
            if len(parts) != 2:
                fail(i, f"expected 'key value', got {lines[i]!r}")
            meta[parts[0]] = parts[1]
            i += 1
        if i >= len(lines):
            fail(len(lines) - 1, "missing states block")
        try:
            n, m, T = int(meta["n"]), int(meta["m"]), int(meta["T"])
        except KeyError as e:
            fail(i, f"missing required field {e}")
        i += 1
        try:
            states = np.array(
                [[float(v) for v in lines[i + t].split()] for t in range(T)]
            ).reshape(T, n)
        except (ValueError, IndexError):
            fail(i, "malformed states block")
        i += T
        if i >= len(lines) or lines[i].strip() != "controls":
            fail(i if i < len(lines) else len(lines) - 1, "expected 'controls'")
        i += 1
        try:
            controls = np.array(
                [[float(v) for v in lines[i + t].split()] for t in range(T - 1)]
            ).reshape(T - 1, m)
        except (ValueError, IndexError):
            fail(i, "malformed controls block")
        i += T - 1
        if i >= len(lines) or lines[i].strip() != "end":
            fail(i if i < len(lines) else len(lines) - 1, "expected 'end'")
        i += 1
        rec = TrajectoryRecord(
            Trajectory(states, controls, dt=float(meta["dt"]) if "dt" in meta else None),
            label=meta.get("label"),
            p=float(meta["p"]) if "p" in meta else None,
            cost=float(meta["cost"]) if "cost" in meta else None,
        )
        if rec.label is not None and rec.label not in ("safe", "unsafe"):
            fail(i - 1, f"bad label {rec.label!r}")
        records.append(rec)
    return records


def _grid_lines(grid: GridSpec) -> list[str]:
    lines = [f"dims {grid.dim}"]
    for j, e in enumerate(grid.edges):
        lines.append(f"edges {j} " + " ".join(_fmt(v) for v in e))
    return lines


def _parse_grid_lines(path, lines, start) -> tuple[GridSpec, int]:
    i = start
    parts = lines[i].split()
    if parts[:1] != ["dims"]:
        raise FileFormatError(path, i + 1, "expected 'dims <k>'")
    dim = int(parts[1])
    edges = []
    for j in range(dim):
        i += 1
        parts = lines[i].split()
        if parts[:2] != ["edges", str(j)]:
            raise FileFormatError(path, i + 1, f"expected 'edges {j} ...'")
        edges.append(np.array([float(v) for v in parts[2:]]))
    return GridSpec(tuple(edges)), i + 1


def write_grid(path, grid: GridSpec) -> None:
    with open(path, "w") as fh:
        fh.write("\n".join([GRID_HEADER] + _grid_lines(grid)) + "\n")


def read_grid(path) -> GridSpec:
    with open(path) as fh:
        lines = [ln for ln in fh.read().splitlines() if ln.strip() and not ln.startswith("#")]
    grid, _ = _parse_grid_lines(path, lines, 0)
    return grid


def write_occupancy(path, est: OccupancyEstimate) -> None:
    lines = [OCC_HEADER, f"mode {est.mode}"]
    lines.extend(_grid_lines(est.grid))
    lines.append(f"cells {est.grid.total_cells}")
    idx = est.grid.unravel(np.arange(est.grid.total_cells))
    idx = np.atleast_2d(idx)
    for cid in range(est.grid.total_cells):
        bins = " ".join(str(int(b)) for b in idx[cid])
        lines.append(f"{cid} {bins} {est.values[cid]:.9g}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_occupancy(path) -> OccupancyEstimate:
    with open(path) as fh:
        lines = [ln for ln in fh.read().splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or not lines[0].startswith("mode "):
        raise FileFormatError(path, 1, "expected 'mode binary|probabilistic'")
    mode = lines[0].split()[1]
    if mode not in (BINARY, PROBABILISTIC):
        raise FileFormatError(path, 1, f"bad mode {mode!r}")
    grid, i = _parse_grid_lines(path, lines, 1)
    parts = lines[i].split()
    if parts[:1] != ["cells"]:
        raise FileFormatError(path, i + 1, "expected 'cells <G>'")
    count = int(parts[1])
    if count != grid.total_cells:
        raise FileFormatError(path, i + 1, "cell count disagrees with the grid")
    values = np.zeros(count)
    seen = np.zeros(count, dtype=bool)
    for k in range(count):
        row = lines[i + 1 + k].split()
        cid = int(row[0])
        if not 0 <= cid < count or seen[cid]:
            raise FileFormatError(path, i + 2 + k, f"bad or duplicate cell id {cid}")
        values[cid] = float(row[-1])
        seen[cid] = True
    return OccupancyEstimate(grid, mode, values)
