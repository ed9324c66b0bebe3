from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import hypergraphs
from modkhyper.errors import ConsistencyError, ParameterError, ParseError
from modkhyper.hypercore import (
    Hypergraph,
    ModelParams,
    generate,
    load_hypergraph,
    read_hypergraph,
    save_hypergraph,
    write_hypergraph,
)

K5 = Hypergraph.complete(5, 2)
K63 = Hypergraph.complete(6, 3)


class TestConstruction:
    def test_edges_are_canonical_and_deduplicated(self):
        h = Hypergraph(4, 2, [(1, 0), (0, 1), (3, 2)])
        assert h.edges == ((0, 1), (2, 3))

    @pytest.mark.parametrize("edges", [[(0, 0)], [(0, 5)], [(0, 1, 2)], [(-1, 2)]])
    def test_invalid_edges_rejected(self, edges):
        with pytest.raises(ParameterError):
            Hypergraph(4, 2, edges)

    def test_fewer_vertices_than_r_is_edgeless(self):
        # induced subgraphs on fewer than r vertices are legitimate
        assert K63.induced({0, 1})[0].num_edges == 0

    def test_index_of_missing_edge(self):
        with pytest.raises(ConsistencyError):
            K5.index((0, 9))


class TestGenerate:
    def test_p_one_gives_complete_graph(self):
        assert generate(ModelParams(5, 2, 1.0, 123)).num_edges == 10

    def test_p_zero_gives_empty(self):
        assert generate(ModelParams(5, 3, 0.0, 99)).num_edges == 0

    def test_seeded_edge_count_is_frozen(self):
        h = generate(ModelParams(30, 3, 0.5, 42))
        assert 1500 <= h.num_edges <= 2560
        assert h.num_edges == 1970

    @pytest.mark.parametrize("params", [ModelParams(3, 4, 0.5, 0), ModelParams(5, 2, 1.5, 0), ModelParams(5, 2, -0.1, 0)])
    def test_invalid_params(self, params):
        with pytest.raises(ParameterError):
            generate(params)

    @settings(max_examples=25, deadline=None)
    @given(st.integers(2, 12), st.integers(2, 4), st.floats(0, 1), st.integers(0, 2**64 - 1))
    def test_pure_function_of_params(self, n, r, p, seed):
        r = min(r, n)
        assert generate(ModelParams(n, r, p, seed)) == generate(ModelParams(n, r, p, seed))


class TestDegrees:
    def test_examples(self):
        assert K5.degree({0}) == 4
        assert K63.degree({0, 1}) == 4
        assert Hypergraph(5, 3).degree({2}) == 0

    def test_degree_of_oversized_set(self):
        with pytest.raises(ParameterError):
            K5.degree({0, 1, 2})

    def test_degree_into_examples(self):
        assert K5.degree_into({0}, {1, 2}) == 2
        assert K63.degree_into({0, 1}, {2, 3}) == 2
        assert K63.degree_into({0, 1}, set()) == 0

    def test_min_codegree_examples(self):
        assert K5.min_codegree(1) == 4
        assert K63.min_codegree(2) == 4
        assert Hypergraph(4, 2, [(0, 1), (1, 2)]).min_codegree(1) == 0

    @pytest.mark.parametrize("i", [0, 3])
    def test_min_codegree_range(self, i):
        with pytest.raises(ParameterError):
            K5.min_codegree(i)

    @settings(max_examples=60, deadline=None)
    @given(hypergraphs())
    def test_handshake(self, h):
        assert int(h.degrees.sum()) == h.r * h.num_edges
        assert sum(h.degree({v}) for v in range(h.n)) == h.r * h.num_edges

    @settings(max_examples=40, deadline=None)
    @given(hypergraphs(max_n=7))
    def test_degree_into_whole_vertex_set(self, h):
        everything = set(range(h.n))
        for w in combinations(range(h.n), h.r - 1):
            assert h.degree_into(w, everything) == h.degree(w)

    @settings(max_examples=40, deadline=None)
    @given(hypergraphs(max_n=7))
    def test_codegrees_match_direct_count(self, h):
        counts = h.codegrees(h.r - 1)
        for w in combinations(range(h.n), h.r - 1):
            assert counts.get(w, 0) == sum(1 for e in h.edges if set(w) <= set(e))


class TestTransforms:
    def test_induced_examples(self):
        sub, _ = K5.induced({0, 1, 2})
        assert sub == Hypergraph.complete(3, 2)
        sub, mapping = K5.induced(range(5))
        assert sub == K5 and mapping == list(range(5))
        sub, _ = K63.induced({1, 2, 4, 5})
        assert sub.num_edges == 4 and sub == Hypergraph.complete(4, 3)

    @settings(max_examples=50, deadline=None)
    @given(hypergraphs(), st.data())
    def test_induced_round_trip(self, h, data):
        s = data.draw(st.sets(st.integers(0, h.n - 1)))
        sub, mapping = h.induced(s)
        back = {tuple(sorted(mapping[v] for v in e)) for e in sub.edges}
        assert back == {e for e in h.edges if set(e) <= s}

    def test_remove_edges(self):
        assert K5.remove_edges(K5.edges).num_edges == 0
        assert K5.remove_edges([]) == K5
        c4 = Hypergraph.complete(4, 2).remove_edges([(0, 1), (2, 3)])
        assert c4.num_edges == 4 and c4.degrees.tolist() == [2, 2, 2, 2]

    def test_remove_absent_edge(self):
        with pytest.raises(ConsistencyError):
            Hypergraph(4, 2, [(0, 1)]).remove_edges([(1, 2)])

    def test_relabel(self):
        h = Hypergraph(3, 2, [(0, 1)])
        assert h.relabel([2, 0, 1]).edges == ((0, 2),)


class TestIO:
    def test_read_example(self):
        h = read_hypergraph("3 2 1\n0 1\n")
        assert h.n == 3 and h.edges == ((0, 1),)

    def test_write_read_canonical(self):
        assert write_hypergraph(read_hypergraph("4 2 2\n3 2\n1 0\n")) == "4 2 2\n0 1\n2 3\n"

    @pytest.mark.parametrize(
        "text, fragment",
        [
            ("3 2 1\n0 3\n", "vertex out of range, line 2"),
            ("3 2\n0 1\n", "line 1"),
            ("3 2 1\n0 1 2\n", "line 2"),
            ("3 2 2\n0 1\n1 0\n", "duplicate edge, line 3"),
            ("3 2 2\n0 1\n", "line"),
        ],
    )
    def test_parse_errors_name_the_line(self, text, fragment):
        with pytest.raises(ParseError, match=fragment):
            read_hypergraph(text)

    @settings(max_examples=30, deadline=None)
    @given(hypergraphs())
    def test_round_trip(self, h):
        assert read_hypergraph(write_hypergraph(h)) == h

    def test_file_round_trip(self, tmp_path):
        h = generate(ModelParams(10, 3, 0.4, 5))
        save_hypergraph(h, tmp_path / "h.txt")
        assert load_hypergraph(tmp_path / "h.txt") == h


def test_degrees_are_int_array():
    assert K5.degrees.dtype == np.int64
