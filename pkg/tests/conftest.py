from itertools import combinations

from hypothesis import strategies as st

from modkhyper.hypercore import Hypergraph


@st.composite
def hypergraphs(draw, max_n=9, max_r=4, min_r=2):
    n = draw(st.integers(min_value=min_r, max_value=max_n))
    r = draw(st.integers(min_value=min_r, max_value=min(max_r, n)))
    pool = list(combinations(range(n), r))
    picked = draw(st.lists(st.sampled_from(pool), max_size=min(len(pool), 30), unique=True))
    return Hypergraph(n, r, picked)


def path(edges_count: int) -> Hypergraph:
    return Hypergraph(edges_count + 1, 2, [(i, i + 1) for i in range(edges_count)])
