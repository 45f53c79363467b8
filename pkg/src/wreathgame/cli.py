"""Command-line front end: single games, parameter sweeps, verification
suites, and the interactive session server."""

from __future__ import annotations

import json
import logging
import os
import sys
from pathlib import Path

import click

from .configs import positive_int, streetmap_from_config
from .errors import ConfigError, WreathGameError
from .lamp import run_lamplighter_game
from .strategy import PaperLamplighter, TransferredRobber, \
    strategy_from_config
from .sweep import run_sweep, write_csv
from .verify import (
    check_board_iso,
    check_cayley_link,
    check_iso_fig3,
    check_metric_axioms,
)
from .wcr import GreedyBoardCop, StationaryCop, run_wcr
from .wreath import board_graph

log = logging.getLogger("wreathgame")

EXIT_LOST = 1
EXIT_CONFIG = 2
EXIT_FAULT = 3

DEFAULT_STREETMAP = {"omega": {"family": "cycle", "k": 5}, "base_state": 0,
                     "lambda": {"family": "infinite_path"}}


def _setup_logging() -> None:
    level = os.environ.get("WREATHGAME_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")


@click.group()
def main() -> None:
    """Game engine and verification lab for lamplighter-style evasion
    games on wreath products."""
    _setup_logging()


def _load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc


def _run_from_config(cfg: dict, seed):
    game = cfg.get("game", "lamplighter")
    m = streetmap_from_config(cfg.get("streetmap", DEFAULT_STREETMAP))
    n = positive_int(cfg, "n")
    sigma = positive_int(cfg, "sigma")
    rho = positive_int(cfg, "rho")
    horizon = int(cfg.get("horizon", 100))
    if horizon < 0:
        raise ConfigError("horizon must be nonnegative")
    used_seed = int(cfg.get("seed", 0)) if seed is None else seed
    if game == "lamplighter":
        copier_cfgs = cfg.get("copiers", [{"kind": "stationary"}] * n)
        if len(copier_cfgs) == 1 and n > 1:
            copier_cfgs = copier_cfgs * n
        if len(copier_cfgs) != n:
            raise ConfigError("need one copier spec per copier")
        try:
            copiers = [strategy_from_config(c) for c in copier_cfgs]
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        lamp_cfg = cfg.get("lamplighter", {"kind": "paper"})
        if lamp_cfg.get("kind") != "paper":
            raise ConfigError("only the constructive lamplighter strategy "
                              "is available")
        return run_lamplighter_game(
            m, n, sigma, rho, copiers, PaperLamplighter(), horizon,
            used_seed,
            shared_copier_budget=bool(cfg.get("shared_copier_budget",
                                              False)))
    if game == "wcr":
        graph = board_graph(m)
        cop_cfgs = cfg.get("cops", [{"kind": "greedy"}] * n)
        if len(cop_cfgs) == 1 and n > 1:
            cop_cfgs = cop_cfgs * n
        cops = []
        for c in cop_cfgs:
            kind = c.get("kind")
            if kind == "greedy":
                cops.append(GreedyBoardCop(m))
            elif kind == "stationary":
                cops.append(StationaryCop())
            else:
                raise ConfigError(f"unknown cop strategy kind {kind!r}")
        robber_cfg = cfg.get("robber", {"kind": "transfer"})
        if robber_cfg.get("kind") != "transfer":
            raise ConfigError("only the transferred robber strategy is "
                              "available")
        return run_wcr(graph, n, sigma, rho, cops, TransferredRobber(m),
                       horizon, used_seed)
    raise ConfigError(f"unknown game {game!r}")


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path())
@click.option("--seed", type=int, default=None,
              help="Override the config seed.")
@click.option("--out", "out_path", type=click.Path(), default=None,
              help="Trace output path (default: stdout).")
def simulate(config_path, seed, out_path) -> None:
    """Run a single game and emit its NDJSON trace."""
    try:
        cfg = _load_config(config_path)
        trace = _run_from_config(cfg, seed)
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(EXIT_CONFIG)
    except WreathGameError as exc:
        click.echo(f"engine error: {exc}", err=True)
        sys.exit(EXIT_FAULT)
    if out_path:
        trace.write(out_path)
    else:
        click.echo(trace.to_ndjson(), nl=False)
    click.echo(f"outcome: {trace.outcome}", err=True)
    if trace.outcome == "fault":
        sys.exit(EXIT_FAULT)
    if trace.outcome in ("copiers_win", "captured"):
        sys.exit(EXIT_LOST)


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path())
@click.option("--out", "out_dir", required=True, type=click.Path())
@click.option("--workers", type=int, default=None,
              help="Worker processes (default: one per CPU).")
def sweep(config_path, out_dir, workers) -> None:
    """Run a parameter grid and write a summary CSV."""
    try:
        grid = _load_config(config_path)
        rows = run_sweep(grid, workers=workers)
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(EXIT_CONFIG)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / "summary.csv"
    write_csv(rows, csv_path)
    faults = [r for r in rows if r["outcome"] == "fault"]
    losses = [r for r in rows if r["outcome"] not in ("survived", "fault")]
    click.echo(f"{len(rows)} cells -> {csv_path} "
               f"({len(losses)} losses, {len(faults)} faults)")
    if faults:
        sys.exit(EXIT_FAULT)
    if losses:
        sys.exit(EXIT_LOST)


@main.command()
@click.option("--check", "which", required=True,
              type=click.Choice(["iso-fig3", "board-iso", "cayley-link",
                                 "metric-axioms"]))
@click.option("--radius", type=int, default=4)
@click.option("--samples", type=int, default=100)
@click.option("--seed", type=int, default=0)
def verify(which, radius, samples, seed) -> None:
    """Run a verification suite and report PASS/FAIL per check."""
    m = streetmap_from_config(DEFAULT_STREETMAP)
    if which == "iso-fig3":
        results = check_iso_fig3()
    elif which == "board-iso":
        results = [check_board_iso(m, samples=samples, seed=seed)]
    elif which == "cayley-link":
        results = [check_cayley_link("Z2wrZ", radius=radius),
                   check_cayley_link("Z3wrZ", radius=min(radius, 3))]
    else:
        results = check_metric_axioms(m, samples=samples, seed=seed,
                                      oracle_pairs=min(samples, 200))
    failed = False
    for res in results:
        click.echo(res.line())
        if not res.passed:
            failed = True
            if res.counterexample is not None:
                click.echo(json.dumps(res.counterexample, indent=2))
    if failed:
        sys.exit(1)


@main.command()
@click.option("--port", type=int, default=8000)
@click.option("--host", default="127.0.0.1")
def serve(port, host) -> None:
    """Start the interactive session server."""
    import uvicorn

    from .service import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
