import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sgcount.errors import NoClosedForm, SizeLimit, UnsupportedFamily
from sgcount.topology import (
    ExplicitGraph,
    GasketSpec,
    build_graph,
    build_schema,
    check_family,
    hausdorff_dimension,
    size_formulas,
    vertex_count,
)

FAMILIES = [(2, 2), (2, 3), (2, 4), (3, 2), (4, 2)]


@pytest.mark.parametrize("d,b", [(3, 3), (4, 3), (1, 2), (2, 1)])
def test_unsupported_families(d, b):
    with pytest.raises(UnsupportedFamily):
        check_family(d, b)
    with pytest.raises(UnsupportedFamily):
        build_schema(d, b)


@pytest.mark.parametrize("d,b,subs,vertices", [
    (2, 2, 3, 6), (2, 3, 6, 10), (2, 4, 10, 15), (3, 2, 4, 10), (4, 2, 5, 15),
])
def test_schema_sizes(d, b, subs, vertices):
    s = build_schema(d, b)
    assert s.sub_count == subs
    assert s.vertex_count == vertices
    assert len(s.slots) == subs * (d + 1)
    assert sorted(x for cls in s.identifications for x in cls) == sorted(s.slots)


@pytest.mark.parametrize("d,b", FAMILIES)
def test_global_corners_are_unshared(d, b):
    s = build_schema(d, b)
    assert len(set(s.global_corners)) == d + 1
    for c in s.global_corners:
        assert len(s.identifications[c]) == 1


def test_sg2_schema_shares_midpoints():
    s = build_schema(2, 2)
    shared = [cls for cls in s.identifications if len(cls) == 2]
    assert len(shared) == 3
    # each midpoint joins two different subs
    assert all(cls[0][0] != cls[1][0] for cls in shared)


@pytest.mark.parametrize("d,b", FAMILIES)
@pytest.mark.parametrize("n", [0, 1, 2])
def test_graph_matches_closed_forms(d, b, n):
    spec = GasketSpec(d, b, n)
    g = build_graph(spec)
    e, v = size_formulas(spec)
    assert (g.edge_count, g.vertex_count) == (e, v)
    assert vertex_count(d, b, n) == v


def test_known_sizes():
    assert size_formulas(GasketSpec(2, 2, 3)) == (81, 42)
    assert size_formulas(GasketSpec(3, 2, 1)) == (24, 10)
    assert size_formulas(GasketSpec(2, 4, 1)) == (30, 15)


@pytest.mark.parametrize("d,b", FAMILIES)
def test_degree_profile(d, b):
    g = build_graph(GasketSpec(d, b, 2))
    deg = g.degrees()
    assert all(deg[c] == d for c in g.corners)
    assert sum(deg) == 2 * g.edge_count
    if b == 2:
        # every non-corner vertex is shared by exactly two subs
        assert g.degree_profile() == {d: d + 1, 2 * d: g.vertex_count - d - 1}


def test_stage_zero_is_complete_graph():
    for d in (2, 3, 4):
        g = build_graph(GasketSpec(d, 2, 0))
        assert g.vertex_count == d + 1
        assert g.edge_count == (d + 1) * d // 2
        assert len(set(g.edges)) == g.edge_count


def test_vertex_cap():
    with pytest.raises(SizeLimit):
        build_graph(GasketSpec(2, 2, 6), vertex_cap=100)


def test_no_closed_form_falls_back():
    # b >= 5 has no tabulated formula but still composes recursively
    with pytest.raises(NoClosedForm):
        size_formulas(GasketSpec(2, 5, 1))
    assert vertex_count(2, 5, 1) == 21


def test_graph_json_round_trip():
    g = build_graph(GasketSpec(2, 3, 1))
    again = ExplicitGraph.from_json(g.to_json())
    assert again == g
    body = json.loads(g.to_json())
    assert body["vertices"] == g.vertex_count and len(body["edges"]) == g.edge_count


def test_negative_stage_rejected():
    with pytest.raises(ValueError):
        GasketSpec(2, 2, -1)


@pytest.mark.parametrize("d,b,expected", [
    (2, 2, "1.584962500721156"), (3, 2, "2"), (4, 2, "2.321928094887362"),
    (2, 3, "1.630929753571457"), (2, 4, "1.660964047443681"),
])
def test_hausdorff_dimension(d, b, expected):
    assert abs(hausdorff_dimension(d, b) - float(expected)) < 1e-14


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(FAMILIES), st.integers(0, 2))
def test_composition_is_connected(family, n):
    d, b = family
    g = build_graph(GasketSpec(d, b, n))
    adj = {v: set() for v in range(g.vertex_count)}
    for u, v in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    seen, stack = {0}, [0]
    while stack:
        for y in adj[stack.pop()]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    assert len(seen) == g.vertex_count
