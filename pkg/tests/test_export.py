"""Artifact round-trips: CSV grids, manifest, heatmaps, period series."""

from __future__ import annotations

import csv
import filecmp
import json

import pytest

from ubisim.export import (
    FIGURE_METRICS,
    METRIC_NAMES,
    SEED_CHAIN_ID,
    export_grid,
    import_grid,
    write_periods_csv,
)
from ubisim.model import ModelParams
from ubisim.simulate import run_simulation
from ubisim.sweep import SweepSpec, run_sweep


@pytest.fixture(scope="module")
def tiny_grid():
    spec = SweepSpec(
        base_params=ModelParams(population_size=20, horizon=10),
        b_d_values=(0.0, 10.0),
        phi_values=(0.0, 1.0),
        replicates=1,
        base_seed=7,
    )
    return run_sweep(spec)


@pytest.fixture(scope="module")
def exported(tiny_grid, tmp_path_factory):
    out = tmp_path_factory.mktemp("grid")
    paths = export_grid(tiny_grid, out)
    return out, paths


def test_export_writes_the_expected_files(exported):
    out, paths = exported
    names = {p.name for p in paths}
    expected = {"manifest.json"}
    expected |= {f"{m}.csv" for m in METRIC_NAMES}
    expected |= {f"{m}_std.csv" for m in METRIC_NAMES}
    expected |= {f"heatmap_{m}.png" for m in FIGURE_METRICS}
    assert names == expected
    for p in paths:
        assert p.exists()
        assert p.parent == out


def test_metric_csv_layout(exported, tiny_grid):
    out, _ = exported
    with (out / "min_rho_E.csv").open(newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["phi", "0.0", "10.0"]
    assert [r[0] for r in rows[1:]] == ["0.0", "1.0"]
    assert float(rows[1][2]) == tiny_grid.cells[0][1].min_rho_E
    assert float(rows[2][1]) == tiny_grid.cells[1][0].min_rho_E


def test_import_round_trips_exactly(exported, tiny_grid):
    out, _ = exported
    again = import_grid(out)
    assert again == tiny_grid


def test_reexport_is_byte_identical(exported, tiny_grid, tmp_path):
    out, _ = exported
    export_grid(tiny_grid, tmp_path / "copy")
    for name in [f"{m}.csv" for m in METRIC_NAMES] + ["manifest.json"]:
        assert filecmp.cmp(out / name, tmp_path / "copy" / name, shallow=False), name


def test_manifest_contents(exported, tiny_grid):
    out, _ = exported
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["base_seed"] == 7
    assert manifest["replicates"] == 1
    assert manifest["seed_chain"] == SEED_CHAIN_ID
    assert manifest["b_d_values"] == [0.0, 10.0]
    assert manifest["phi_values"] == [0.0, 1.0]
    assert manifest["base_params"]["population_size"] == 20
    assert manifest["base_params"]["necessity_total"] == 10.0
    assert manifest["version"] == tiny_grid.version
    assert manifest["created_at"] == tiny_grid.created_at
    assert sorted(manifest["metrics"]) == sorted(METRIC_NAMES)


def test_heatmaps_are_real_images(exported):
    out, _ = exported
    for m in FIGURE_METRICS:
        png = out / f"heatmap_{m}.png"
        assert png.stat().st_size > 1024
        assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_heatmaps_can_be_skipped(tiny_grid, tmp_path):
    paths = export_grid(tiny_grid, tmp_path / "nopics", heatmaps=False)
    assert not any(p.suffix == ".png" for p in paths)


def test_export_creates_nested_directories(tiny_grid, tmp_path):
    deep = tmp_path / "a" / "b" / "c"
    export_grid(tiny_grid, deep, heatmaps=False)
    assert (deep / "manifest.json").exists()


def test_import_rejects_tampered_axes(tiny_grid, tmp_path):
    out = tmp_path / "evil"
    export_grid(tiny_grid, out, heatmaps=False)
    target = out / "avg_unmet.csv"
    text = target.read_text().replace("10.0", "11.0")
    target.write_text(text)
    with pytest.raises(ValueError, match="avg_unmet.csv"):
        import_grid(out)


def test_export_to_a_file_path_raises_oserror(tiny_grid, tmp_path):
    clash = tmp_path / "not-a-dir"
    clash.write_text("occupied")
    with pytest.raises(OSError):
        export_grid(tiny_grid, clash, heatmaps=False)


def test_periods_csv_round_trip(tmp_path):
    run = run_simulation(ModelParams(population_size=12, horizon=6), 3)
    path = write_periods_csv(run, tmp_path / "sub" / "periods.csv")
    with path.open(newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["period", "rho_E", "share_N", "share_0", "unmet_fraction"]
    assert len(rows) == 1 + 6
    for t, row in enumerate(rows[1:]):
        assert int(row[0]) == t
        m = run.metrics[t]
        assert [float(v) for v in row[1:]] == [m.rho_E, m.share_N, m.share_0,
                                               m.unmet_fraction]
