from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import hypergraphs, path
from modkhyper.decomp import Decomposition, verify_decomposition
from modkhyper.errors import BudgetError, ParameterError
from modkhyper.hypercore import Hypergraph
from modkhyper.oracle import (
    binomial_mod_k,
    binomial_mod_k_enumerate,
    binomial_mod_k_fourier,
    chi_brute,
    chi_exact,
    hypergraph_pm_exact,
)


class TestChi:
    def test_single_edge(self):
        for k in (2, 3, 5):
            assert chi_exact(Hypergraph(3, 3, [(0, 1, 2)]), k).value == 1

    def test_disjoint_edges(self):
        h = Hypergraph(9, 3, [(0, 1, 2), (3, 4, 5), (6, 7, 8)])
        assert chi_exact(h, 4).value == 1

    def test_two_edge_path(self):
        assert chi_exact(path(2), 2).value == 2
        assert chi_brute(path(2), 2) == 2

    def test_k4(self):
        k4 = Hypergraph.complete(4, 2)
        # all degrees are 3, already odd
        assert chi_exact(k4, 2).value == chi_brute(k4, 2) == 1
        assert chi_exact(k4, 3).value == chi_brute(k4, 3)

    def test_empty(self):
        assert chi_exact(Hypergraph(4, 2), 3).value == 0

    def test_edge_budget(self):
        with pytest.raises(BudgetError):
            chi_exact(Hypergraph.complete(6, 2), 2, max_edges=12)

    def test_node_budget(self):
        res = chi_exact(path(10), 3, node_budget=5)
        assert res.value is None and res.budget_exceeded

    @settings(max_examples=80, deadline=None)
    @given(hypergraphs(max_n=6, max_r=3), st.integers(2, 4))
    def test_matches_brute_force(self, h, k):
        if h.num_edges > 7:
            return
        res = chi_exact(h, k)
        assert res.value == chi_brute(h, k)
        witness = Decomposition(k, h.n, h.r, h.edges, res.witness, "oracle", 0)
        assert verify_decomposition(h, witness)
        assert witness.classes_used == res.value

    @settings(max_examples=40, deadline=None)
    @given(hypergraphs(max_n=7, max_r=3), st.integers(2, 4), st.randoms(use_true_random=False))
    def test_relabel_invariance(self, h, k, rnd):
        if h.num_edges > 10:
            return
        perm = list(range(h.n))
        rnd.shuffle(perm)
        assert chi_exact(h.relabel(perm), k).value == chi_exact(h, k).value


class TestPerfectMatchingOracle:
    def test_examples(self):
        assert hypergraph_pm_exact(Hypergraph.complete(6, 3)) is not None
        assert hypergraph_pm_exact(Hypergraph.complete(7, 3)) is None
        assert hypergraph_pm_exact(Hypergraph(6, 3, [(0, 1, 2), (0, 1, 3), (1, 2, 3)])) is None

    @settings(max_examples=60, deadline=None)
    @given(hypergraphs(max_n=8, max_r=3))
    def test_output_is_perfect_matching(self, h):
        found = hypergraph_pm_exact(h)
        if found is not None:
            assert sorted(v for e in found for v in e) == list(range(h.n))
            assert all(e in h for e in found)


class TestBinomialModK:
    def test_point_mass(self):
        assert binomial_mod_k(0, 0.4, 3).probs == (1.0, 0.0, 0.0)

    def test_two_coin_flips(self):
        assert binomial_mod_k(2, 0.5, 2).probs[0] == pytest.approx(0.5, abs=1e-15)

    def test_large_n_is_uniform(self):
        assert binomial_mod_k(1000, 0.3, 3).max_deviation < 1e-9

    def test_parameter_checks(self):
        with pytest.raises(ParameterError):
            binomial_mod_k(10, 1.5, 3)
        with pytest.raises(ParameterError):
            binomial_mod_k(10, 0.5, 1)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 64), st.fractions(0, 1, max_denominator=20), st.integers(2, 6))
    def test_exact_rationals(self, n, p, k):
        exact = binomial_mod_k_enumerate(n, Fraction(p), k)
        assert sum(exact) == 1
        got = binomial_mod_k(n, float(p), k).probs
        assert np.allclose(got, [float(x) for x in exact], rtol=0, atol=1e-13)

    @pytest.mark.parametrize("n", [1, 10, 100, 1000, 5000, 10_000])
    @pytest.mark.parametrize("p, k", [(0.3, 3), (0.5, 4), (0.05, 7), (0.9, 2)])
    def test_roots_of_unity(self, n, p, k):
        dp = binomial_mod_k(n, p, k)
        assert np.allclose(dp.probs, binomial_mod_k_fourier(n, p, k), rtol=0, atol=1e-10)
        assert abs(sum(dp.probs) - 1) <= 1e-12

    @pytest.mark.parametrize("p, k", [(0.3, 3), (0.1, 2), (0.5, 5), (0.7, 4)])
    def test_deviation_non_increasing(self, p, k):
        devs = [binomial_mod_k(n, p, k).max_deviation for n in (10, 50, 100, 500, 1000)]
        assert all(a >= b for a, b in zip(devs, devs[1:]))
