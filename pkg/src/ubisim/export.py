"""On-disk artifacts for runs and sweeps: CSV grids, a JSON manifest, heatmaps.

Numbers are written with repr(), which is the shortest string that parses
back to the identical float, so exporting and re-importing a grid is exact
and two identical grids serialize to byte-identical files.
"""

from __future__ import annotations

import csv
import dataclasses
import json
from pathlib import Path

from .economy import PeriodMetrics
from .model import ModelParams
from .simulate import SimulationRun, SweepCellSummary
from .sweep import SweepGrid, SweepSpec

__all__ = [
    "METRIC_NAMES",
    "FIGURE_METRICS",
    "SEED_CHAIN_ID",
    "export_grid",
    "import_grid",
    "write_periods_csv",
]

METRIC_NAMES: tuple[str, ...] = ("min_rho_E", "max_share_0", "avg_share_0", "avg_unmet")
FIGURE_METRICS: tuple[str, ...] = ("min_rho_E", "avg_share_0", "avg_unmet")

# Recorded in every manifest so a grid can be regenerated from seeds alone.
SEED_CHAIN_ID = "splitmix64(splitmix64(splitmix64(base) ^ b_d_index) ^ replicate)"


def _write_metric_csv(path: Path, grid: SweepGrid, name: str) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["phi"] + [repr(b) for b in grid.spec.b_d_values])
        for i, phi in enumerate(grid.spec.phi_values):
            writer.writerow([repr(phi)] + [repr(getattr(c, name)) for c in grid.cells[i]])


def _read_metric_csv(path: Path, spec: SweepSpec) -> list[list[float]]:
    with path.open(newline="") as fh:
        rows = list(csv.reader(fh))
    header = rows[0]
    if header[0] != "phi" or tuple(float(v) for v in header[1:]) != spec.b_d_values:
        raise ValueError(f"{path.name}: header does not match the manifest's b_d axis")
    if tuple(float(r[0]) for r in rows[1:]) != spec.phi_values:
        raise ValueError(f"{path.name}: phi column does not match the manifest's phi axis")
    return [[float(v) for v in row[1:]] for row in rows[1:]]


def _edges(values) -> list[float]:
    """Cell edges at midpoints, so each heatmap cell is centred on its value."""
    v = list(values)
    if len(v) == 1:
        return [v[0] - 0.5, v[0] + 0.5]
    mids = [(a + b) / 2 for a, b in zip(v, v[1:])]
    return [v[0] - (mids[0] - v[0])] + mids + [v[-1] + (v[-1] - mids[-1])]


def _write_heatmap(path: Path, grid: SweepGrid, name: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6.0, 4.8))
    mesh = ax.pcolormesh(
        _edges(grid.spec.b_d_values),
        _edges(grid.spec.phi_values),
        grid.metric_matrix(name),
        cmap="viridis",
        vmin=0.0,
        vmax=1.0,
    )
    fig.colorbar(mesh, ax=ax, label=name)
    ax.set_xlabel("benefit amount per period")
    ax.set_ylabel("acceptance ratio for the decaying currency")
    ax.set_title(name)
    fig.tight_layout()
    fig.savefig(path, dpi=160)
    plt.close(fig)


def _manifest_payload(grid: SweepGrid) -> dict:
    return {
        "version": grid.version,
        "created_at": grid.created_at,
        "elapsed_seconds": grid.elapsed_seconds,
        "seed_chain": SEED_CHAIN_ID,
        "base_seed": grid.spec.base_seed,
        "replicates": grid.spec.replicates,
        "b_d_values": list(grid.spec.b_d_values),
        "phi_values": list(grid.spec.phi_values),
        "base_params": {
            f.name: getattr(grid.spec.base_params, f.name)
            for f in dataclasses.fields(ModelParams)
        },
        "metrics": list(METRIC_NAMES),
    }


def export_grid(grid: SweepGrid, out_dir: str | Path, heatmaps: bool = True) -> list[Path]:
    """Write one grid as CSVs (metric and spread per metric), manifest, heatmaps.

    Returns the paths written, manifest first.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    manifest = out / "manifest.json"
    with manifest.open("w") as fh:
        json.dump(_manifest_payload(grid), fh, indent=2, sort_keys=True)
        fh.write("\n")
    written.append(manifest)

    for name in METRIC_NAMES:
        path = out / f"{name}.csv"
        _write_metric_csv(path, grid, name)
        written.append(path)
        spread = out / f"{name}_std.csv"
        _write_metric_csv(spread, grid, f"{name}_std")
        written.append(spread)

    if heatmaps:
        for name in FIGURE_METRICS:
            path = out / f"heatmap_{name}.png"
            _write_heatmap(path, grid, name)
            written.append(path)
    return written


def import_grid(out_dir: str | Path) -> SweepGrid:
    """Rebuild a SweepGrid exactly from an export_grid() directory."""
    out = Path(out_dir)
    with (out / "manifest.json").open() as fh:
        manifest = json.load(fh)
    params = ModelParams(**manifest["base_params"])
    spec = SweepSpec(
        base_params=params,
        b_d_values=tuple(manifest["b_d_values"]),
        phi_values=tuple(manifest["phi_values"]),
        replicates=manifest["replicates"],
        base_seed=manifest["base_seed"],
    )
    tables = {name: _read_metric_csv(out / f"{name}.csv", spec) for name in METRIC_NAMES}
    spreads = {
        name: _read_metric_csv(out / f"{name}_std.csv", spec) for name in METRIC_NAMES
    }
    cells = tuple(
        tuple(
            SweepCellSummary(
                **{name: tables[name][i][j] for name in METRIC_NAMES},
                **{f"{name}_std": spreads[name][i][j] for name in METRIC_NAMES},
            )
            for j in range(len(spec.b_d_values))
        )
        for i in range(len(spec.phi_values))
    )
    return SweepGrid(
        spec=spec,
        cells=cells,
        created_at=manifest["created_at"],
        elapsed_seconds=manifest["elapsed_seconds"],
        version=manifest["version"],
    )


def write_periods_csv(run: SimulationRun, path: str | Path) -> Path:
    """One row per simulated period with the four population metrics."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fields = [f.name for f in dataclasses.fields(PeriodMetrics)]
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["period"] + fields)
        for t, m in enumerate(run.metrics):
            writer.writerow([t] + [repr(getattr(m, name)) for name in fields])
    return path
