import csv

import pytest

from wreathgame.errors import ConfigError
from wreathgame.sweep import (
    CSV_COLUMNS,
    acceptance_grid,
    build_cells,
    run_cell,
    run_sweep,
    write_csv,
)

P2 = {"omega": {"family": "path", "k": 2}, "base_state": 0,
      "lambda": {"family": "infinite_path"}}


def tiny_grid(horizon=5):
    return {"n": [1], "sigma": [1], "rho": [1], "streetmaps": [P2],
            "adversaries": [{"kind": "stationary"},
                            {"kind": "random", "seed": 1}],
            "horizon": horizon, "seed": 0}


def test_build_cells_order_and_count():
    cells = build_cells(tiny_grid())
    assert len(cells) == 2
    assert cells[0]["adversary"] == {"kind": "stationary"}
    assert cells[1]["adversary"] == {"kind": "random", "seed": 1}


def test_build_cells_rejects_missing_keys():
    with pytest.raises(ConfigError):
        build_cells({"n": [1]})


def test_acceptance_grid_size():
    cells = build_cells(acceptance_grid())
    assert len(cells) == 3 * 3 * 2 * 2 * 5


def test_run_cell_row_shape():
    row = run_cell(build_cells(tiny_grid())[0])
    assert set(row) == set(CSV_COLUMNS)
    assert row["outcome"] == "survived"
    assert row["adversary"] == "stationary"
    assert row["streetmap"] == "(path(2),0,infinite_path)"


def test_run_sweep_serial_matches_parallel():
    grid = tiny_grid(horizon=3)
    serial = run_sweep(grid, workers=1)
    parallel = run_sweep(grid, workers=2)
    drop_time = lambda r: {k: v for k, v in r.items() if k != "wall_ms"}
    assert [drop_time(r) for r in serial] == [drop_time(r) for r in parallel]


def test_write_csv(tmp_path):
    rows = run_sweep(tiny_grid(horizon=2), workers=1)
    out = tmp_path / "summary.csv"
    write_csv(rows, out)
    with open(out, newline="") as fh:
        got = list(csv.DictReader(fh))
    assert len(got) == len(rows)
    assert list(got[0]) == CSV_COLUMNS
