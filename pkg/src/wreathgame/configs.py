"""JSON run-configuration parsing shared by the CLI and the service."""

from __future__ import annotations

from typing import List, Tuple

from . import groups as grp
from .boards import Streetmap
from .errors import ConfigError
from .graphs import LazyGraph, cycle_graph, infinite_path, path_graph
from .ids import VertexId, jsonable_to_payload
from .wreath import wreath_product


def group_from_config(cfg: dict) -> grp.Group:
    try:
        kind = cfg["group"]
        if kind == "Z":
            return grp.ZGroup()
        if kind == "Zm":
            return grp.ZmGroup(int(cfg["m"]))
        if kind == "wreath":
            return grp.WreathGroup(group_from_config(cfg["left"]),
                                   group_from_config(cfg["right"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad group config {cfg!r}: {exc}") from exc
    raise ConfigError(f"unknown group kind {cfg!r}")


def graph_from_config(cfg: dict) -> LazyGraph:
    try:
        family = cfg["family"]
        if family == "path":
            return path_graph(int(cfg["k"]))
        if family == "cycle":
            return cycle_graph(int(cfg["k"]))
        if family == "infinite_path":
            return infinite_path()
        if family == "cayley":
            group = group_from_config(cfg["group"])
            gens = [grp.element_from_json(group, g)
                    for g in cfg["generators"]]
            return grp.cayley_graph(group, gens)
        if family == "wreath":
            omega = graph_from_config(cfg["omega"])
            lam = graph_from_config(cfg["lambda"])
            base = VertexId(jsonable_to_payload(cfg["base_state"]))
            return wreath_product(omega, base, lam)
    except ConfigError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad graph config {cfg!r}: {exc}") from exc
    raise ConfigError(f"unknown graph family {cfg!r}")


def streetmap_from_config(cfg: dict) -> Streetmap:
    try:
        omega = graph_from_config(cfg["omega"])
        lam = graph_from_config(cfg["lambda"])
        base = VertexId(jsonable_to_payload(cfg["base_state"]))
        return Streetmap(omega, base, lam)
    except ConfigError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad streetmap config {cfg!r}: {exc}") from exc


def positive_int(cfg: dict, key: str) -> int:
    try:
        val = int(cfg[key])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"missing or invalid {key!r}") from exc
    if val < 1:
        raise ConfigError(f"{key!r} must be positive, got {val}")
    return val


def nonneg_int(cfg: dict, key: str, default=None) -> int:
    if key not in cfg and default is not None:
        return default
    try:
        val = int(cfg[key])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"missing or invalid {key!r}") from exc
    if val < 0:
        raise ConfigError(f"{key!r} must be nonnegative, got {val}")
    return val
