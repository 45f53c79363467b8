"""Parameter sweeps: run a grid of games in a worker pool and summarize
one CSV row per cell."""

from __future__ import annotations

import csv
import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional

from .configs import streetmap_from_config
from .errors import ConfigError
from .lamp import run_lamplighter_game
from .strategy import PaperLamplighter, strategy_from_config

CSV_COLUMNS = ["streetmap", "n", "sigma", "rho", "adversary", "seed",
               "outcome", "min_dist", "max_lamp_moves", "turns",
               "violations", "wall_ms"]


def _adversary_name(cfg: dict) -> str:
    if cfg.get("kind") == "random":
        return f"random[{cfg.get('seed', 0)}]"
    return cfg.get("kind", "?")


def _streetmap_name(cfg: dict) -> str:
    def gname(g):
        fam = g.get("family")
        return f"{fam}({g['k']})" if "k" in g else fam
    return f"({gname(cfg['omega'])},{cfg['base_state']}," \
           f"{gname(cfg['lambda'])})"


def run_cell(cell: dict) -> Dict:
    """Run one sweep cell; module-level so worker processes can import it."""
    m = streetmap_from_config(cell["streetmap"])
    n = cell["n"]
    copiers = [strategy_from_config(cell["adversary"]) for _ in range(n)]
    start = time.perf_counter()
    trace = run_lamplighter_game(
        m, n, cell["sigma"], cell["rho"], copiers, PaperLamplighter(),
        cell["horizon"], cell["seed"])
    wall_ms = round((time.perf_counter() - start) * 1000, 1)
    min_dist = trace.stats.get("min_dist")
    return {
        "streetmap": _streetmap_name(cell["streetmap"]),
        "n": n,
        "sigma": cell["sigma"],
        "rho": cell["rho"],
        "adversary": _adversary_name(cell["adversary"]),
        "seed": cell["seed"],
        "outcome": trace.outcome,
        "min_dist": "" if min_dist is None else min_dist,
        "max_lamp_moves": trace.stats.get("max_lamp_moves", 0),
        "turns": trace.stats.get("turns_played", 0),
        "violations": trace.stats.get("violations", 0),
        "wall_ms": wall_ms,
    }


def build_cells(grid: dict) -> List[dict]:
    """Expand a grid config into individual cells, in deterministic order.

    Grid keys: n, sigma, rho (lists), streetmaps (list of streetmap
    configs), adversaries (list of strategy configs), horizon, seed.
    """
    try:
        ns = list(grid["n"])
        sigmas = list(grid["sigma"])
        rhos = list(grid["rho"])
        streetmaps = list(grid["streetmaps"])
        adversaries = list(grid["adversaries"])
        horizon = int(grid["horizon"])
        seed = int(grid.get("seed", 0))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad sweep grid: {exc}") from exc
    cells = []
    for smap, n, sigma, rho, adv in itertools.product(
            streetmaps, ns, sigmas, rhos, adversaries):
        cells.append({"streetmap": smap, "n": n, "sigma": sigma, "rho": rho,
                      "adversary": adv, "horizon": horizon, "seed": seed})
    return cells


def acceptance_grid(horizon: int = 200, seed: int = 0) -> dict:
    """The evasion-certification grid over two streetmaps and five
    adversary instances."""
    p2 = {"family": "path", "k": 2}
    c5 = {"family": "cycle", "k": 5}
    pinf = {"family": "infinite_path"}
    return {
        "n": [1, 2, 3],
        "sigma": [1, 2, 3],
        "rho": [1, 2],
        "streetmaps": [
            {"omega": p2, "base_state": 0, "lambda": pinf},
            {"omega": c5, "base_state": 0, "lambda": pinf},
        ],
        "adversaries": [
            {"kind": "stationary"},
            {"kind": "random", "seed": 1},
            {"kind": "random", "seed": 2},
            {"kind": "random", "seed": 3},
            {"kind": "greedy"},
        ],
        "horizon": horizon,
        "seed": seed,
    }


def run_sweep(grid: dict, workers: Optional[int] = None) -> List[Dict]:
    """Run every cell (in a bounded worker pool when workers > 1) and
    return rows in grid order."""
    cells = build_cells(grid)
    if workers is not None and workers <= 1:
        return [run_cell(c) for c in cells]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_cell, cells, chunksize=4))


def write_csv(rows: Iterable[Dict], path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
