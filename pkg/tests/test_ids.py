import pytest
from hypothesis import given
from hypothesis import strategies as st

from wreathgame.ids import (
    FinSupportedMap,
    VertexId,
    jsonable_to_payload,
    payload_key,
    payload_to_jsonable,
)

payloads = st.recursive(
    st.integers(-1000, 1000) | st.text(max_size=5),
    lambda children: st.tuples(children, children),
    max_leaves=6)


def test_integer_order_is_numeric():
    assert VertexId(-4) < VertexId(4)
    assert VertexId(-1) < VertexId(0) < VertexId(1)


def test_type_groups_are_disjoint():
    assert VertexId(5) < VertexId("a")
    assert VertexId("z") < VertexId((0,))


def test_bool_payload_rejected():
    with pytest.raises(TypeError):
        payload_key(True)


@given(payloads)
def test_text_round_trip(p):
    v = VertexId(p)
    assert VertexId.parse(v.text()) == v


@given(payloads, payloads)
def test_order_total_and_consistent(p, q):
    u, v = VertexId(p), VertexId(q)
    assert (u == v) or (u < v) or (v < u)
    assert (u < v) == (payload_key(p) < payload_key(q))


@given(payloads)
def test_jsonable_round_trip(p):
    assert jsonable_to_payload(payload_to_jsonable(p)) == p


def test_map_lookup_and_default():
    m = FinSupportedMap.from_mapping(0, {VertexId(3): 1, VertexId(1): 2,
                                         VertexId(5): 0})
    assert m.get(VertexId(3)) == 1
    assert m.get(VertexId(1)) == 2
    assert m.get(VertexId(5)) == 0  # default entries are dropped
    assert m.get(VertexId(99)) == 0
    assert m.support() == (VertexId(1), VertexId(3))


def test_map_rejects_stored_default():
    with pytest.raises(ValueError):
        FinSupportedMap(0, ((VertexId(1), 0),))


def test_map_rejects_unsorted_entries():
    with pytest.raises(ValueError):
        FinSupportedMap(0, ((VertexId(3), 1), (VertexId(1), 1)))


def test_with_entry_sets_and_deletes():
    m = FinSupportedMap(0)
    m2 = m.with_entry(VertexId(4), 7)
    assert m2.get(VertexId(4)) == 7
    assert len(m2) == 1
    m3 = m2.with_entry(VertexId(4), 0)
    assert m3 == m


@given(st.dictionaries(st.integers(-20, 20), st.integers(0, 3), max_size=8))
def test_from_mapping_pointwise_equality(d):
    m = FinSupportedMap.from_mapping(0, {VertexId(k): v
                                         for k, v in d.items()})
    for k, v in d.items():
        assert m.get(VertexId(k)) == v
    assert all(v != 0 for _, v in m.items())
