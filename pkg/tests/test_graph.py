import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import digraphs
from topicnets.graph import GraphError, LabeledDigraph
from topicnets.structure import er_rewire, geodesic_matrix, orbit, shortest_path_lengths

TRIANGLE = LabeledDigraph(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")])


def floyd_warshall(g, weighted):
    n = g.order
    d = np.full((n, n), math.inf)
    np.fill_diagonal(d, 0.0)
    top = max((a.weight for a in g.arc_objects()), default=1.0)
    for a in g.arc_objects():
        if a.src != a.dst:
            i, j = g.index(a.src), g.index(a.dst)
            d[i, j] = min(d[i, j], top / a.weight if weighted else 1.0)
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if d[i, k] + d[k, j] < d[i, j]:
                    d[i, j] = d[i, k] + d[k, j]
    return d


class TestLabeledDigraph:
    def test_rejects_duplicate_labels(self):
        with pytest.raises(GraphError):
            LabeledDigraph([("a", "x"), ("b", "x")])

    def test_rejects_negative_weight_and_dangling_arc(self):
        with pytest.raises(GraphError):
            LabeledDigraph([("a", "a", -1.0)])
        with pytest.raises(GraphError):
            LabeledDigraph(["a"], [("a", "b")])

    def test_rejects_parallel_arcs(self):
        with pytest.raises(GraphError):
            LabeledDigraph(["a", "b"], [("a", "b", 1.0), ("a", "b", 2.0)])

    def test_self_loop_allowed(self):
        g = LabeledDigraph(["a"], [("a", "a", 2.0)])
        assert g.has_arc("a", "a") and g.arc_weight("a", "a") == 2.0

    def test_json_roundtrip(self):
        g = LabeledDigraph([("a", "A", 2.0), ("b", "B", 0.5)], [("a", "b", 3.0, "hyperlink")])
        assert LabeledDigraph.from_json(g.to_json()) == g
        assert g.to_dict()["arcs"] == [{"src": "a", "dst": "b", "weight": 3.0, "kind": "hyperlink"}]

    def test_dot_export(self):
        dot = TRIANGLE.to_dot("tri")
        assert dot.startswith('digraph "tri" {') and '"a" -> "b"' in dot

    def test_labelled_arcs(self):
        g = LabeledDigraph([("1", "a"), ("2", "b")], [("1", "2")])
        assert g.labelled_arcs() == {("a", "b")}


class TestOrbit:
    def test_zero_radius(self):
        o = orbit(TRIANGLE, "a", 0)
        assert o.vertices == ("a",) and o.size == 0

    def test_radius_one_follows_direction(self):
        o = orbit(TRIANGLE, "a", 1)
        assert o.vertices == ("a", "b") and o.arcs == (("a", "b"),)

    def test_star(self):
        star = LabeledDigraph(["v", "u1", "u2", "u3"], [("v", "u1"), ("v", "u2"), ("v", "u3")])
        assert orbit(star, "v", 1) == star

    def test_unknown_vertex(self):
        with pytest.raises(GraphError):
            orbit(TRIANGLE, "zz", 1)

    @given(digraphs(max_n=7), st.data())
    def test_nesting_and_full_radius(self, g, data):
        v = data.draw(st.sampled_from(g.vertices))
        prev = set()
        for n in range(5):
            cur = set(orbit(g, v, n).vertices)
            assert prev <= cur
            prev = cur
        reach = {w for w in g.vertices if np.isfinite(shortest_path_lengths(g)[g.index(v), g.index(w)])}
        assert set(orbit(g, v, g.order).vertices) == reach


class TestGeodesics:
    def test_path_hops(self):
        g = LabeledDigraph(["a", "b", "c"], [("a", "b"), ("b", "c")])
        d = geodesic_matrix(g)
        assert d[0, 2] == 2 and d[2, 0] == 3  # unreachable -> |V|

    def test_disconnected_sentinel(self):
        d = geodesic_matrix(LabeledDigraph(["a", "b"]))
        assert d[0, 1] == 2 and d[0, 0] == 0

    def test_weighted_lengths(self):
        g = LabeledDigraph(["a", "b", "c"], [("a", "b", 4.0), ("b", "c", 2.0), ("a", "c", 1.0)])
        d = shortest_path_lengths(g, weighted=True)
        # lengths 1, 2 and 4: the two-step path wins
        assert d[0, 2] == pytest.approx(3.0)

    def test_weighted_rejects_zero_weight(self):
        g = LabeledDigraph(["a", "b"], [("a", "b", 0.0)])
        with pytest.raises(GraphError):
            geodesic_matrix(g, weighted=True)

    def test_cap(self):
        g = LabeledDigraph(["a", "b", "c"], [("a", "b"), ("b", "c")])
        assert geodesic_matrix(g, cap=1)[0, 2] == 3

    @given(digraphs(max_n=7), st.booleans())
    @settings(max_examples=60)
    def test_matches_floyd_warshall(self, g, weighted):
        np.testing.assert_allclose(shortest_path_lengths(g, weighted), floyd_warshall(g, weighted), rtol=1e-12)

    @given(digraphs(max_n=7), st.booleans())
    @settings(max_examples=60)
    def test_triangle_inequality(self, g, weighted):
        d = shortest_path_lengths(g, weighted)
        n = g.order
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if np.isfinite(d[i, k]) and np.isfinite(d[k, j]):
                        assert d[i, j] <= d[i, k] + d[k, j] + 1e-9


class TestRewire:
    def test_no_arcs_unchanged(self):
        g = LabeledDigraph(["a", "b"])
        assert er_rewire(g, 3) is g

    def test_deterministic(self):
        assert er_rewire(TRIANGLE, 7) == er_rewire(TRIANGLE, 7)

    @given(digraphs(max_n=8, loops=True), st.integers(0, 2**32))
    def test_preserves_counts_and_weights(self, g, seed):
        r = er_rewire(g, seed)
        assert r.order == g.order and r.size == g.size
        assert Counter(r.label(v) for v in r.vertices) == Counter(g.label(v) for v in g.vertices)
        assert list(r.vertex_objects()) == list(g.vertex_objects())
        assert Counter(a.weight for a in r.arc_objects()) == Counter(a.weight for a in g.arc_objects())
