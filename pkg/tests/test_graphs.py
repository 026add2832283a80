import json

import pytest
from hypothesis import given, strategies as st

from tolgraphs.graphs import (
    Graph,
    closed_neighborhood,
    complement,
    components,
    dump_graph,
    graph_from_json,
    graph_to_json,
    induced_subgraph,
    labeled_equal,
    load_graph,
    neighborhood,
    set_neighborhood,
    to_dot,
)
from tolgraphs.oracles import four_component_fixture


def triangle():
    return Graph(3, [(0, 1), (1, 2), (0, 2)])


def small_graphs():
    return st.integers(0, 8).flatmap(
        lambda n: st.builds(
            Graph,
            st.just(n),
            st.lists(
                st.tuples(st.integers(0, max(n - 1, 0)), st.integers(0, max(n - 1, 0)))
                .filter(lambda e: e[0] != e[1]),
                max_size=2 * n,
            )
            if n > 1
            else st.just([]),
        )
    )


def test_neighborhood_triangle():
    assert neighborhood(triangle(), 0) == (1, 2)


def test_neighborhood_fixture_hub():
    fx = four_component_fixture()
    u = fx.by_name["u"]
    assert neighborhood(fx.graph, u) == tuple(
        fx.by_name[x] for x in ("u1", "u2", "u3")
    )
    rest = set(range(fx.graph.n)) - set(closed_neighborhood(fx.graph, u))
    assert rest == {fx.by_name[v] for v in ("v1", "v2", "v3", "v4")}


def test_neighborhood_edgeless():
    g = Graph(4)
    assert neighborhood(g, 2) == ()
    assert closed_neighborhood(g, 2) == (2,)


def test_neighborhood_out_of_range():
    with pytest.raises(ValueError):
        neighborhood(triangle(), 3)


def test_set_neighborhood_excludes_set():
    fx = four_component_fixture()
    ids = fx.by_name
    restrict = [ids["v1"], ids["v2"]]
    assert set_neighborhood(fx.graph, restrict) == (ids["u1"], ids["u3"])


def test_components_fixture_four_singletons():
    fx = four_component_fixture()
    restrict = [fx.by_name[v] for v in ("v1", "v2", "v3", "v4")]
    assert components(fx.graph, restrict) == [(v,) for v in restrict]


def test_components_path_connected():
    g = Graph(3, [(0, 1), (1, 2)])
    assert components(g, range(3)) == [(0, 1, 2)]


def test_components_empty_restrict():
    assert components(triangle(), []) == []


@given(small_graphs())
def test_components_partition(g):
    parts = components(g, range(g.n))
    seen = [v for part in parts for v in part]
    assert sorted(seen) == list(range(g.n))
    index = {v: i for i, part in enumerate(parts) for v in part}
    for u, v in g.edges:
        assert index[u] == index[v]


def test_induced_subgraph_triangle_edge():
    sub, relabel = induced_subgraph(triangle(), [0, 2])
    assert sub.n == 2 and sub.edges == frozenset({(0, 1)})
    assert relabel == {0: 0, 2: 1}


def test_induced_subgraph_identity():
    g = four_component_fixture().graph
    sub, relabel = induced_subgraph(g, range(g.n))
    assert sub == g and relabel == {v: v for v in range(g.n)}


def test_induced_subgraph_fixture_slice():
    fx = four_component_fixture()
    ids = fx.by_name
    keep = [ids["u1"], ids["v1"], ids["v2"]]
    sub, relabel = induced_subgraph(fx.graph, keep)
    expected = {
        tuple(sorted((relabel[ids["u1"]], relabel[ids["v1"]]))),
        tuple(sorted((relabel[ids["u1"]], relabel[ids["v2"]]))),
    }
    assert sub.edges == frozenset(expected)


def test_complement_k3_edgeless():
    assert complement(triangle()).edges == frozenset()


@given(small_graphs())
def test_complement_involution_and_count(g):
    co = complement(g)
    assert complement(co) == g
    assert len(g.edges) + len(co.edges) == g.n * (g.n - 1) // 2


def test_c5_self_complementary():
    c5 = Graph(5, [(i, (i + 1) % 5) for i in range(5)])
    assert labeled_equal(c5, complement(c5), {i: (2 * i) % 5 for i in range(5)})


def test_labeled_equal_identity_and_swap():
    g = Graph(2, [(0, 1)])
    assert labeled_equal(g, g, {0: 0, 1: 1})
    assert labeled_equal(g, g, {0: 1, 1: 0})


def test_labeled_equal_detects_difference():
    k3 = triangle()
    p3 = Graph(3, [(0, 1), (1, 2)])
    assert not labeled_equal(k3, p3, {0: 0, 1: 1, 2: 2})


def test_labeled_equal_rejects_non_bijections():
    g = triangle()
    with pytest.raises(ValueError):
        labeled_equal(g, g, {0: 0, 1: 0, 2: 2})
    with pytest.raises(ValueError):
        labeled_equal(g, g, {0: 0, 1: 1})


def test_graph_rejects_self_loop_and_range():
    with pytest.raises(ValueError):
        Graph(2, [(0, 0)])
    with pytest.raises(ValueError):
        Graph(2, [(0, 2)])


def test_duplicate_edges_collapse():
    g = Graph(2, [(0, 1), (1, 0)])
    assert g.edge_count == 1


def test_json_roundtrip(tmp_path):
    fx = four_component_fixture()
    path = tmp_path / "g.json"
    dump_graph(fx.graph, path, fx.labels)
    loaded, labels = load_graph(path)
    assert loaded == fx.graph
    assert labels == fx.labels
    bare = graph_from_json(graph_to_json(fx.graph))
    assert bare == (fx.graph, None)


def test_json_is_deterministic(tmp_path):
    fx = four_component_fixture()
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    dump_graph(fx.graph, a, fx.labels)
    dump_graph(fx.graph, b, fx.labels)
    assert a.read_bytes() == b.read_bytes()


def test_dot_export():
    fx = four_component_fixture()
    dot = to_dot(fx.graph, fx.labels)
    assert dot.startswith("graph {")
    assert '0 [label="u"];' in dot
    assert f"  0 -- {fx.by_name['u1']};" in dot
    assert dot.rstrip().endswith("}")
