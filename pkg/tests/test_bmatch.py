import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modkhyper.bmatch import (
    BipartiteGraph,
    HallViolator,
    Matching,
    max_matching,
    min_vertex_cover,
    perfect_matching_or_violator,
)
from modkhyper.errors import ParameterError
from modkhyper.oracle import bipartite_max_matching_brute, count_perfect_matchings


@st.composite
def bipartite(draw, max_side=8, square=False):
    a = draw(st.integers(0, max_side))
    b = a if square else draw(st.integers(0, max_side))
    rows = [draw(st.lists(st.integers(0, b - 1), max_size=b)) if b else [] for _ in range(a)]
    return BipartiteGraph(a, b, tuple(tuple(r) for r in rows))


def test_complete_4x4():
    m = max_matching(BipartiteGraph.complete(4, 4))
    assert len(m) == 4


def test_no_edges():
    assert len(max_matching(BipartiteGraph(3, 3, ((), (), ())))) == 0


def test_star():
    assert len(max_matching(BipartiteGraph(3, 1, ((0,), (0,), (0,))))) == 1


def test_perfect_on_complete():
    out = perfect_matching_or_violator(BipartiteGraph.complete(5, 5))
    assert isinstance(out, Matching) and len(out) == 5


def test_violator_example():
    g = BipartiteGraph(2, 2, ((0,), (0,)))
    out = perfect_matching_or_violator(g)
    assert out == HallViolator("A", (0, 1), 1)
    assert out.check(g)


def test_unequal_sides():
    with pytest.raises(ParameterError):
        perfect_matching_or_violator(BipartiteGraph(2, 3, ((0,), (1,))))


def test_adjacency_normalised():
    g = BipartiteGraph(1, 3, ((2, 0, 2),))
    assert g.adjacency == ((0, 2),)
    with pytest.raises(ParameterError):
        BipartiteGraph(1, 2, ((2,),))


@settings(max_examples=300, deadline=None)
@given(bipartite())
def test_matches_brute_force(g):
    m = max_matching(g)
    assert m.is_valid(g)
    assert len(m) == bipartite_max_matching_brute(g)


@settings(max_examples=200, deadline=None)
@given(bipartite(square=True))
def test_perfect_or_certified(g):
    out = perfect_matching_or_violator(g)
    if isinstance(out, Matching):
        assert out.is_perfect(g)
        assert count_perfect_matchings(g) > 0
    else:
        assert out.check(g)
        assert count_perfect_matchings(g) == 0


@settings(max_examples=200, deadline=None)
@given(bipartite())
def test_koenig(g):
    cover_a, cover_b = min_vertex_cover(g)
    assert all(a in cover_a or b in cover_b for a in range(g.a_size) for b in g.adjacency[a])
    assert len(cover_a) + len(cover_b) == len(max_matching(g))


def test_deterministic():
    rng = np.random.default_rng(3)
    rows = tuple(tuple(np.flatnonzero(rng.random(30) < 0.2).tolist()) for _ in range(30))
    g = BipartiteGraph(30, 30, rows)
    assert max_matching(g) == max_matching(g)
