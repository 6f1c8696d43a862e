"""Grid sweep over (benefit amount, acceptance ratio) with replicate seeds.

Every cell of the grid is an independent simulation bundle, so the sweep is
embarrassingly parallel over cells.  Workers return complete cell summaries
and results are placed by index, which makes the assembled grid bit-identical
no matter how many workers run or in what order cells finish.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .model import ModelParams
from .simulate import SweepCellSummary, run_simulation, summarize

__all__ = [
    "SweepSpec",
    "SweepCellSummary",
    "SweepGrid",
    "cell_seed",
    "run_sweep",
    "detect_phase_boundary",
]

_MASK64 = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    """One splitmix64 scramble step; the standard constants, pinned forever."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (x ^ (x >> 31)) & _MASK64


def cell_seed(base_seed: int, b_d_index: int, replicate: int) -> int:
    """Derive the simulation seed for one grid cell replicate.

    The chain is splitmix64(splitmix64(splitmix64(base) ^ b_d_index) ^
    replicate) — documented here precisely because exported grids promise to
    be reproducible from (base_seed, indices) alone, across versions.

    The acceptance-ratio index is deliberately not part of the chain: cells
    in the same benefit column share their replicate seeds, so comparisons
    along the acceptance-ratio axis use common draws, and a zero-benefit
    column is exactly invariant along that axis.
    """
    s = _splitmix64(int(base_seed) & _MASK64)
    s = _splitmix64(s ^ (int(b_d_index) & _MASK64))
    s = _splitmix64(s ^ (int(replicate) & _MASK64))
    return s


def default_b_d_values(params: ModelParams) -> tuple[float, ...]:
    """Eleven evenly spaced benefit amounts from 0 to twice the necessity bill."""
    top = 2.0 * params.necessity_total
    return tuple(top * i / 10 for i in range(11))


def default_phi_values() -> tuple[float, ...]:
    return tuple(i / 10 for i in range(11))


@dataclass(frozen=True)
class SweepSpec:
    """The full description of one sweep: axes, replicates, base parameters."""

    base_params: ModelParams
    b_d_values: tuple[float, ...]
    phi_values: tuple[float, ...]
    replicates: int = 3
    base_seed: int = 42

    def __post_init__(self) -> None:
        object.__setattr__(self, "b_d_values", tuple(float(v) for v in self.b_d_values))
        object.__setattr__(self, "phi_values", tuple(float(v) for v in self.phi_values))
        for name in ("b_d_values", "phi_values"):
            vals = getattr(self, name)
            if not vals:
                raise ValueError(f"{name} must be non-empty")
            if any(b <= a for a, b in zip(vals, vals[1:])):
                raise ValueError(f"{name} must be strictly increasing (got {vals!r})")
        if self.replicates < 1:
            raise ValueError(f"replicates must be >= 1 (got {self.replicates!r})")
        # Every derived cell must be a valid parameter set before anything runs.
        for i, phi in enumerate(self.phi_values):
            for j, b_d in enumerate(self.b_d_values):
                try:
                    self.cell_params(i, j)
                except ValueError as err:
                    raise ValueError(
                        f"invalid derived cell (phi index {i}, b_d index {j}): {err}"
                    ) from err

    @classmethod
    def default(cls, base_params: ModelParams | None = None, base_seed: int = 42,
                replicates: int = 3) -> "SweepSpec":
        """The desk-scale 11x11 grid around the default economy."""
        params = base_params if base_params is not None else ModelParams()
        return cls(
            base_params=params,
            b_d_values=default_b_d_values(params),
            phi_values=default_phi_values(),
            replicates=replicates,
            base_seed=base_seed,
        )

    def cell_params(self, phi_index: int, b_d_index: int) -> ModelParams:
        return replace(
            self.base_params,
            acceptance_ratio=self.phi_values[phi_index],
            ubi_amount=self.b_d_values[b_d_index],
        )

    def cell_seeds(self, b_d_index: int) -> tuple[int, ...]:
        return tuple(cell_seed(self.base_seed, b_d_index, r) for r in range(self.replicates))


@dataclass(frozen=True)
class SweepGrid:
    """Dense matrix of cell summaries, indexed [phi index][b_d index]."""

    spec: SweepSpec
    cells: tuple[tuple[SweepCellSummary, ...], ...]
    created_at: str
    elapsed_seconds: float
    version: str = __version__

    def __post_init__(self) -> None:
        if len(self.cells) != len(self.spec.phi_values):
            raise ValueError("grid row count must equal the number of phi values")
        for row in self.cells:
            if len(row) != len(self.spec.b_d_values):
                raise ValueError("grid column count must equal the number of b_d values")

    def metric_matrix(self, name: str) -> np.ndarray:
        """One metric as a (phi, b_d) float matrix."""
        return np.array([[getattr(cell, name) for cell in row] for row in self.cells])


def _run_cell(task) -> SweepCellSummary:
    """Worker body: run the replicates of one cell and aggregate them."""
    params, seeds = task
    parts = [summarize(run_simulation(params, seed)) for seed in seeds]
    vals = {
        name: np.array([getattr(p, name) for p in parts])
        for name in ("min_rho_E", "max_share_0", "avg_share_0", "avg_unmet")
    }
    return SweepCellSummary(
        min_rho_E=float(vals["min_rho_E"].mean()),
        max_share_0=float(vals["max_share_0"].mean()),
        avg_share_0=float(vals["avg_share_0"].mean()),
        avg_unmet=float(vals["avg_unmet"].mean()),
        min_rho_E_std=float(vals["min_rho_E"].std()),
        max_share_0_std=float(vals["max_share_0"].std()),
        avg_share_0_std=float(vals["avg_share_0"].std()),
        avg_unmet_std=float(vals["avg_unmet"].std()),
    )


def run_sweep(spec: SweepSpec, parallelism: int = 1) -> SweepGrid:
    """Simulate and summarize every grid cell.

    `parallelism` is the worker-process count; 1 runs inline.  The result is
    bit-identical for any worker count because cells are independent, each
    cell's replicate aggregation happens inside one worker, and placement is
    by index.
    """
    if parallelism < 1:
        raise ValueError(f"parallelism must be >= 1 (got {parallelism!r})")
    t0 = time.perf_counter()
    tasks = [
        (spec.cell_params(i, j), spec.cell_seeds(j))
        for i in range(len(spec.phi_values))
        for j in range(len(spec.b_d_values))
    ]
    if parallelism == 1:
        summaries = [_run_cell(t) for t in tasks]
    else:
        chunk = max(1, len(tasks) // (parallelism * 4))
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            summaries = list(pool.map(_run_cell, tasks, chunksize=chunk))
    n_b = len(spec.b_d_values)
    cells = tuple(
        tuple(summaries[i * n_b:(i + 1) * n_b]) for i in range(len(spec.phi_values))
    )
    return SweepGrid(
        spec=spec,
        cells=cells,
        created_at=datetime.now(timezone.utc).isoformat(timespec="seconds"),
        elapsed_seconds=time.perf_counter() - t0,
    )


def detect_phase_boundary(grid: SweepGrid, threshold: float = 0.8) -> list[float | None]:
    """Smallest acceptance ratio per benefit column where min_rho_E dips below threshold.

    Returns one entry per b_d value; None where the column never crosses.
    """
    if not 0.0 < threshold < 1.0:
        raise ValueError(f"threshold must lie strictly inside (0, 1) (got {threshold!r})")
    out: list[float | None] = []
    for j in range(len(grid.spec.b_d_values)):
        found = None
        for i, phi in enumerate(grid.spec.phi_values):
            if grid.cells[i][j].min_rho_E < threshold:
                found = phi
                break
        out.append(found)
    return out
