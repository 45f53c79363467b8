"""Group elements with canonical forms for Z, Z_m, and restricted wreath
products, plus Cayley-graph construction.

Elements are represented by canonical payloads (see :mod:`wreathgame.ids`):
an integer for Z, a residue in [0, m) for Z_m, and a pair
``(support_entries, position)`` for a wreath product, where the support
entries are ``(h_payload, g_payload)`` pairs sorted by key with no entry
equal to the left factor's identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple, Union

from .errors import GroupMismatchError
from .graphs import LazyGraph
from .ids import Payload, VertexId, payload_key, payload_to_jsonable, \
    jsonable_to_payload


@dataclass(frozen=True)
class ZGroup:
    """The infinite cyclic group of integers under addition."""


@dataclass(frozen=True)
class ZmGroup:
    """The cyclic group of residues modulo m."""

    m: int

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("modulus must be at least 2")


@dataclass(frozen=True)
class WreathGroup:
    """Restricted wreath product of ``left`` by ``right``."""

    left: "Group"
    right: "Group"


Group = Union[ZGroup, ZmGroup, WreathGroup]


def identity(group: Group) -> Payload:
    if isinstance(group, (ZGroup, ZmGroup)):
        return 0
    if isinstance(group, WreathGroup):
        return ((), identity(group.right))
    raise TypeError(f"unknown group {group!r}")


def contains(group: Group, a: Payload) -> bool:
    if isinstance(group, ZGroup):
        return isinstance(a, int) and not isinstance(a, bool)
    if isinstance(group, ZmGroup):
        return isinstance(a, int) and not isinstance(a, bool) \
            and 0 <= a < group.m
    if isinstance(group, WreathGroup):
        if not (isinstance(a, tuple) and len(a) == 2
                and isinstance(a[0], tuple)):
            return False
        entries, pos = a
        if not contains(group.right, pos):
            return False
        prev = None
        eg = identity(group.left)
        for item in entries:
            if not (isinstance(item, tuple) and len(item) == 2):
                return False
            k, g = item
            if not contains(group.right, k) or not contains(group.left, g):
                return False
            if g == eg:
                return False
            kk = payload_key(k)
            if prev is not None and kk <= prev:
                return False
            prev = kk
        return True
    raise TypeError(f"unknown group {group!r}")


def _require(group: Group, a: Payload) -> None:
    if not contains(group, a):
        raise GroupMismatchError(f"{a!r} is not a canonical element of {group!r}")


def _canonical_support(group: WreathGroup, mapping) -> Tuple:
    eg = identity(group.left)
    items = [(k, g) for k, g in mapping.items() if g != eg]
    items.sort(key=lambda kv: payload_key(kv[0]))
    return tuple(items)


def multiply(group: Group, a: Payload, b: Payload) -> Payload:
    _require(group, a)
    _require(group, b)
    if isinstance(group, ZGroup):
        return a + b
    if isinstance(group, ZmGroup):
        return (a + b) % group.m
    if isinstance(group, WreathGroup):
        entries_a, h1 = a
        entries_b, h2 = b
        out = dict(entries_a)
        eg = identity(group.left)
        for k, g in entries_b:
            h = multiply(group.right, h1, k)
            out[h] = multiply(group.left, out.get(h, eg), g)
        return (_canonical_support(group, out), multiply(group.right, h1, h2))
    raise TypeError(f"unknown group {group!r}")


def inverse(group: Group, a: Payload) -> Payload:
    _require(group, a)
    if isinstance(group, ZGroup):
        return -a
    if isinstance(group, ZmGroup):
        return (-a) % group.m
    if isinstance(group, WreathGroup):
        entries, h = a
        hinv = inverse(group.right, h)
        out = {}
        for k, g in entries:
            out[multiply(group.right, hinv, k)] = inverse(group.left, g)
        result = (_canonical_support(group, out), hinv)
        # The closed form is certified by multiplying back to the identity;
        # this catches side/sign convention errors.
        if multiply(group, a, result) != identity(group):
            raise AssertionError("inverse certification failed")
        return result
    raise TypeError(f"unknown group {group!r}")


def embed_left(group: WreathGroup, g: Payload) -> Payload:
    """Embed an element of the left factor at the identity position."""
    _require(group.left, g)
    if g == identity(group.left):
        return identity(group)
    return (((identity(group.right), g),), identity(group.right))


def embed_right(group: WreathGroup, h: Payload) -> Payload:
    """Embed an element of the right factor as a pure position shift."""
    _require(group.right, h)
    return ((), h)


def element_to_json(group: Group, a: Payload):
    _require(group, a)
    if isinstance(group, (ZGroup, ZmGroup)):
        return a
    entries, pos = a
    return {"support": [[payload_to_jsonable(k), element_to_json(group.left, g)]
                        for k, g in entries],
            "pos": element_to_json(group.right, pos)}


def element_from_json(group: Group, j) -> Payload:
    if isinstance(group, (ZGroup, ZmGroup)):
        a = jsonable_to_payload(j)
        _require(group, a)
        return a
    if isinstance(group, WreathGroup):
        entries = tuple((jsonable_to_payload(k), element_from_json(group.left, g))
                        for k, g in j["support"])
        a = (entries, element_from_json(group.right, j["pos"]))
        _require(group, a)
        return a
    raise TypeError(f"unknown group {group!r}")


def cayley_graph(group: Group, generators: List[Payload]) -> LazyGraph:
    """The Cayley graph of ``group`` over ``generators``.

    Vertices carry element payloads; each vertex g is adjacent to g*s and
    g*s^-1 for every generator s.
    """
    gens = list(generators)
    ident = identity(group)
    for s in gens:
        _require(group, s)
        if s == ident:
            raise ValueError("generating set must not contain the identity")
    if not gens:
        raise ValueError("generating set must be nonempty")
    closed = list(gens)
    for s in gens:
        inv = inverse(group, s)
        if inv not in closed:
            closed.append(inv)

    def nbrs(v: VertexId) -> Tuple[VertexId, ...]:
        out = {VertexId(multiply(group, v.payload, s)) for s in closed}
        out.discard(v)
        return tuple(sorted(out))

    def contains_v(v: VertexId) -> bool:
        return contains(group, v.payload)

    return LazyGraph("cayley", VertexId(ident), nbrs, contains_v)
