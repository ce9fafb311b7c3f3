import pytest
from hypothesis import given, settings, strategies as st

from pebblelab.expr import ExprError, Family, Product, build, evaluate, parse_graph_expr
from pebblelab.graph import DisconnectedGraphError, MIN_PARAM, complete, corona, neighbourhood_corona


def test_parses_corona():
    tree = parse_graph_expr("corona(complete(3),path(1))")
    assert tree == Product("corona", Family("complete", 3), Family("path", 1))
    assert evaluate(tree) == corona(complete(3), complete(1))


def test_parses_neighbourhood_corona():
    g = build("ncorona(complete(3),complete(2))")
    assert g == neighbourhood_corona(complete(3), complete(2))
    assert g.tag == "ncorona(complete(3),complete(2))"


def test_case_and_whitespace_are_ignored():
    a = parse_graph_expr("  Corona ( COMPLETE(3) ,\tpath( 1 ) ) ")
    assert a == parse_graph_expr("corona(complete(3),path(1))")


@pytest.mark.parametrize("text,offset,fragment", [
    ("cycle()", 6, "takes 1 argument, got 0"),
    ("wheel(4)", 0, "unknown constructor"),
    ("cycle(2)", 6, "must be >= 3"),
    ("path(0)", 5, "must be >= 1"),
    ("path(3) x", 8, "trailing input"),
    ("path(3,4)", 6, "got more"),
    ("corona(path(2))", 14, "takes 2 arguments, got 1"),
    ("corona()", 7, "got 0"),
    ("corona(path(2),path(1),path(1))", 22, "got more"),
    ("path(two)", 5, "integer argument"),
    ("path(3", 6, "end of input"),
    ("", 0, "constructor name"),
    ("path[3]", 4, "unexpected character"),
])
def test_errors_carry_byte_offsets(text, offset, fragment):
    with pytest.raises(ExprError) as info:
        parse_graph_expr(text)
    assert info.value.offset == offset
    assert fragment in str(info.value)


def test_offsets_count_bytes_not_characters():
    with pytest.raises(ExprError) as info:
        parse_graph_expr("é")
    assert info.value.offset == 0
    with pytest.raises(ExprError) as info:
        parse_graph_expr("path(1)é")
    assert info.value.offset == 7
    with pytest.raises(ExprError) as info:
        parse_graph_expr("\u00a0path(1))")
    assert info.value.offset == 9


def test_single_vertex_neighbourhood_corona_is_rejected():
    with pytest.raises(DisconnectedGraphError):
        build("ncorona(complete(1),path(2))")


families = st.builds(
    Family,
    st.sampled_from(sorted(MIN_PARAM)),
    st.integers(0, 6),
).filter(lambda f: f.k >= MIN_PARAM[f.name])

trees = st.recursive(
    families,
    lambda inner: st.builds(Product, st.sampled_from(["cartesian", "corona", "ncorona"]), inner, inner),
    max_leaves=4,
)


@settings(max_examples=200, deadline=None)
@given(trees)
def test_round_trip(tree):
    assert parse_graph_expr(str(tree)) == tree


@settings(max_examples=100, deadline=None)
@given(trees, st.sampled_from([str.upper, str.lower, lambda s: s.replace(",", " , ")]))
def test_round_trip_with_noise(tree, noise):
    assert parse_graph_expr(noise(str(tree))) == tree
