"""Canonical vertex identifiers and finitely supported maps.

A vertex of any graph family is identified by an immutable canonical
payload: an integer (paths, cycles, the infinite path, Z-like groups), a
string, or a nested tuple (wreath vertices, wreath group elements).  All
payloads of one graph are shape-homogeneous, and the induced total order
is used everywhere deterministic tie-breaking is needed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import total_ordering
from typing import Any, Iterable, Mapping, Tuple

Payload = Any  # int | str | tuple[Payload, ...]


def payload_key(p: Payload):
    """Total-order sort key: integers numerically, tuples lexicographically."""
    if isinstance(p, bool):
        raise TypeError("bool payloads are not supported")
    if isinstance(p, int):
        return (0, p)
    if isinstance(p, str):
        return (1, p)
    if isinstance(p, tuple):
        return (2, tuple(payload_key(q) for q in p))
    raise TypeError(f"unsupported payload type: {type(p).__name__}")


def payload_to_jsonable(p: Payload):
    if isinstance(p, tuple):
        return [payload_to_jsonable(q) for q in p]
    return p


def jsonable_to_payload(j) -> Payload:
    if isinstance(j, list):
        return tuple(jsonable_to_payload(q) for q in j)
    if isinstance(j, bool) or not isinstance(j, (int, str)):
        raise TypeError(f"unsupported payload json: {j!r}")
    return j


@total_ordering
@dataclass(frozen=True)
class VertexId:
    """Canonical, serializable identifier of a vertex."""

    payload: Payload

    def __lt__(self, other: "VertexId") -> bool:
        return payload_key(self.payload) < payload_key(other.payload)

    def text(self) -> str:
        """Stable text form; round-trips through :meth:`parse`."""
        return json.dumps(payload_to_jsonable(self.payload), separators=(",", ":"))

    @classmethod
    def parse(cls, s: str) -> "VertexId":
        return cls(jsonable_to_payload(json.loads(s)))

    def __repr__(self) -> str:
        return f"V({self.text()})"


def _map_key(k):
    return payload_key(k.payload) if isinstance(k, VertexId) else payload_key(k)


@dataclass(frozen=True)
class FinSupportedMap:
    """Finitely supported map with a default value.

    Entries are sorted by key and never store the default, so equality of
    maps coincides with pointwise equality.
    """

    default: Any
    entries: Tuple[Tuple[Any, Any], ...] = ()

    def __post_init__(self):
        prev = None
        for k, v in self.entries:
            if v == self.default:
                raise ValueError(f"entry {k!r} stores the default value")
            kk = _map_key(k)
            if prev is not None and kk <= prev:
                raise ValueError("entries must be strictly increasing by key")
            prev = kk

    @classmethod
    def from_mapping(cls, default, mapping: Mapping) -> "FinSupportedMap":
        items = [(k, v) for k, v in mapping.items() if v != default]
        items.sort(key=lambda kv: _map_key(kv[0]))
        return cls(default, tuple(items))

    def get(self, key):
        for k, v in self.entries:
            if k == key:
                return v
        return self.default

    def with_entry(self, key, value) -> "FinSupportedMap":
        """Return a copy with ``key`` set to ``value`` (default deletes)."""
        items = [(k, v) for k, v in self.entries if k != key]
        if value != self.default:
            items.append((key, value))
            items.sort(key=lambda kv: _map_key(kv[0]))
        return FinSupportedMap(self.default, tuple(items))

    def support(self) -> Tuple[Any, ...]:
        return tuple(k for k, _ in self.entries)

    def items(self) -> Tuple[Tuple[Any, Any], ...]:
        return self.entries

    def __len__(self) -> int:
        return len(self.entries)
