import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bei.graph6 import (
    Graph6ParseError,
    emit_graph6,
    format_edge_list,
    parse_edge_list,
    parse_graph6,
)
from bei.graphs import build_graph


def test_fixed_encodings():
    p3 = build_graph(3, [(1, 2), (2, 3)])
    assert list(emit_graph6(p3)) == [66, 103]
    assert parse_graph6(bytes([66, 103])) == p3
    assert list(emit_graph6(build_graph(1, []))) == [64]
    assert parse_graph6(b"@") == build_graph(1, [])


def test_parse_errors_carry_offsets():
    with pytest.raises(Graph6ParseError):
        parse_graph6(b"")
    with pytest.raises(Graph6ParseError) as err:
        parse_graph6(bytes([66]))  # truncated body
    assert "offset" in str(err.value)
    with pytest.raises(Graph6ParseError):
        parse_graph6(bytes([66, 103, 103]))  # trailing bytes
    with pytest.raises(Graph6ParseError):
        parse_graph6(bytes([63]))  # n = 0
    # nonzero padding: n=3 uses 3 bits, low 3 bits of the body must be 0
    with pytest.raises(Graph6ParseError):
        parse_graph6(bytes([66, 63 + 0b101001]))


@given(st.integers(min_value=1, max_value=9), st.data())
@settings(max_examples=80, deadline=None)
def test_roundtrip(n, data):
    pairs = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    picked = data.draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    g = build_graph(n, picked)
    assert parse_graph6(emit_graph6(g)) == g


def test_edge_list_format():
    g = parse_edge_list("4;1-2,1-3,2-3,3-4")
    assert g.edges() == ((1, 2), (1, 3), (2, 3), (3, 4))
    assert format_edge_list(g) == "4;1-2,1-3,2-3,3-4"
    assert parse_edge_list("2;").edge_count() == 0
    with pytest.raises(ValueError):
        parse_edge_list("3:1-2")
    with pytest.raises(ValueError):
        parse_edge_list("3;1/2")
    with pytest.raises(ValueError):
        parse_edge_list("3;1-4")
