from itertools import combinations

import networkx as nx
import numpy as np
import pytest

from oracles import laman_rigid_bruteforce
from pcfiber.exceptions import DomainError, InputError
from pcfiber.geometry import PointCloud, random_rigid_motion, rigidity_matrix
from pcfiber.linalg import left_null_space, numerical_rank
from pcfiber.rigidity import (Framework, Graph, RigidityStatus, ggr_2d, ggr_randomized, infinitesimal_rigidity_test,
                              is_3_connected, is_redundantly_rigid_2d, laman_glr_2d, laman_rank_2d, stress_matrix)

TRIANGLE = Graph.complete(3)
PATH3 = Graph(3, [(0, 1), (1, 2)])
C4 = Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
C4_DIAG = Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)])
K4 = Graph.complete(4)
WHEEL5 = Graph(5, [(0, 1), (1, 2), (2, 3), (0, 3), (4, 0), (4, 1), (4, 2), (4, 3)])


def all_graphs(n):
    edges = list(combinations(range(n), 2))
    for mask in range(2 ** len(edges)):
        yield Graph(n, [e for k, e in enumerate(edges) if mask >> k & 1])


def random_graphs(n, count, seed):
    rng = np.random.default_rng(seed)
    edges = list(combinations(range(n), 2))
    for _ in range(count):
        p = rng.uniform(0.3, 0.9)
        yield Graph(n, [e for e in edges if rng.random() < p])


def generic(n, d, seed):
    return PointCloud(np.random.default_rng(seed).uniform(size=(n, d)))


class TestGraph:
    def test_validation(self):
        with pytest.raises(InputError):
            Graph(0)
        with pytest.raises(InputError):
            Graph(3, [(0, 0)])
        with pytest.raises(InputError):
            Graph(3, [(0, 1), (1, 0)])
        with pytest.raises(IndexError):
            Graph(3, [(0, 3)])

    def test_equality_ignores_order(self):
        assert Graph(3, [(0, 1), (2, 1)]) == Graph(3, [(1, 2), (0, 1)])

    def test_framework_size_mismatch(self):
        with pytest.raises(InputError):
            Framework(TRIANGLE, generic(4, 2, 0))


class TestInfinitesimal:
    @pytest.mark.parametrize("graph,status,rank", [
        (TRIANGLE, RigidityStatus.RIGID, 3),
        (C4, RigidityStatus.FLEXIBLE, 4),
        (C4_DIAG, RigidityStatus.RIGID, 5),
    ])
    def test_examples(self, graph, status, rank):
        v = infinitesimal_rigidity_test(Framework(graph, generic(graph.n, 2, 1)))
        assert (v.status, v.rank) == (status, rank)
        assert v.target_rank == 2 * graph.n - 3
        assert v.dof == v.target_rank - v.rank

    def test_too_few_points(self):
        with pytest.raises(DomainError):
            infinitesimal_rigidity_test(Framework(Graph.complete(2), generic(2, 2, 0)))

    def test_degenerate_span(self):
        P = PointCloud([[0.0, 0.0], [1.0, 0.0], [2.5, 0.0], [4.0, 0.0]])
        with pytest.raises(DomainError):
            infinitesimal_rigidity_test(Framework(K4, P))

    def test_single_edge_line(self):
        v = infinitesimal_rigidity_test(Framework(Graph(2, [(0, 1)]), PointCloud([[0.0], [1.0]])))
        assert v.is_rigid and v.rank == 1

    @pytest.mark.parametrize("seed", range(5))
    def test_rank_invariant_under_motion_and_relabel(self, seed):
        rng = np.random.default_rng(seed)
        P = generic(6, 3, seed)
        g = next(random_graphs(6, 1, seed))
        perm = rng.permutation(6)
        Q = PointCloud(random_rigid_motion(P, rng).coords[np.argsort(perm)])
        a = infinitesimal_rigidity_test(Framework(g, P))
        b = infinitesimal_rigidity_test(Framework(g.relabel(perm), Q))
        assert a == b


class TestLaman:
    @pytest.mark.parametrize("graph,expected", [
        (TRIANGLE, True), (PATH3, False), (C4_DIAG, True), (C4, False), (K4, True), (Graph(1), True),
    ])
    def test_examples(self, graph, expected):
        assert laman_glr_2d(graph) is expected

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_exhaustive_against_subset_counting(self, n):
        for g in all_graphs(n):
            assert laman_glr_2d(g) == laman_rigid_bruteforce(n, list(g.edges)), g

    @pytest.mark.parametrize("n", [6, 7])
    def test_sampled_against_subset_counting(self, n):
        for g in random_graphs(n, 40, n):
            assert laman_glr_2d(g) == laman_rigid_bruteforce(n, list(g.edges)), g

    @pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
    def test_against_rank(self, n):
        for k, g in enumerate(random_graphs(n, 40, 10 + n)):
            v = infinitesimal_rigidity_test(Framework(g, generic(n, 2, k)))
            assert laman_glr_2d(g) == v.is_rigid
            assert laman_rank_2d(g) == v.rank

    def test_edge_order_irrelevant(self, rng):
        for g in random_graphs(6, 20, 3):
            shuffled = Graph(g.n, [g.edges[k] for k in rng.permutation(g.m)])
            assert laman_rank_2d(g) == laman_rank_2d(shuffled)


class TestConnectivity:
    @pytest.mark.parametrize("graph,expected", [(K4, True), (C4, False), (C4_DIAG, False), (WHEEL5, True)])
    def test_examples(self, graph, expected):
        assert is_3_connected(graph) is expected

    def test_small_graphs_never_3_connected(self):
        assert not is_3_connected(TRIANGLE)

    @pytest.mark.parametrize("n", [4, 5])
    def test_exhaustive_against_networkx(self, n):
        for g in all_graphs(n):
            G = nx.Graph()
            G.add_nodes_from(range(n))
            G.add_edges_from(g.edges)
            assert is_3_connected(g) == (nx.node_connectivity(G) >= 3)

    def test_sampled_against_networkx(self):
        for n in (6, 7, 8):
            for g in random_graphs(n, 50, n):
                G = nx.Graph()
                G.add_nodes_from(range(n))
                G.add_edges_from(g.edges)
                assert is_3_connected(g) == (nx.node_connectivity(G) >= 3)


class TestGlobal:
    @pytest.mark.parametrize("graph,expected", [
        (C4_DIAG, False), (K4, True), (TRIANGLE, False),
    ])
    def test_redundant(self, graph, expected):
        assert is_redundantly_rigid_2d(graph) is expected

    @pytest.mark.parametrize("graph,expected", [(K4, True), (C4_DIAG, False), (WHEEL5, True), (TRIANGLE, True)])
    def test_ggr_2d(self, graph, expected):
        assert ggr_2d(graph) is expected

    @pytest.mark.parametrize("graph,d,expected", [
        (K4, 2, True), (PATH3, 2, False), (Graph.complete(5), 3, True), (Graph.complete(3), 3, True),
        (PATH3, 3, False),
    ])
    def test_ggr_randomized_examples(self, graph, d, expected):
        assert ggr_randomized(graph, d, seed=0) is expected

    def test_k5_minus_edge_in_3d(self):
        # K5 minus an edge is a bipyramid: rigid in R^3 but has two realizations
        g = Graph(5, [e for e in combinations(range(5), 2) if e != (3, 4)])
        assert infinitesimal_rigidity_test(Framework(g, generic(5, 3, 0))).is_rigid
        assert ggr_randomized(g, 3, seed=0) is False

    def test_ggr_implies_glr(self):
        for n in (4, 5):
            for g in all_graphs(n):
                if ggr_2d(g):
                    assert laman_glr_2d(g)

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_randomized_matches_characterization_exhaustive(self, n):
        for g in all_graphs(n):
            assert ggr_randomized(g, 2, trials=3, seed=n) == ggr_2d(g), g

    def test_randomized_matches_characterization_n6(self):
        for k, g in enumerate(random_graphs(6, 150, 66)):
            assert ggr_randomized(g, 2, trials=3, seed=k) == ggr_2d(g), g

    def test_randomized_seed_reproducible(self):
        g = WHEEL5
        assert ggr_randomized(g, 2, seed=5) == ggr_randomized(g, 2, seed=5)

    def test_randomized_argument_checks(self):
        with pytest.raises(InputError):
            ggr_randomized(K4, 0)
        with pytest.raises(InputError):
            ggr_randomized(K4, 2, trials=0)

    def test_stress_matrix_rows_sum_to_zero(self, rng):
        g = WHEEL5
        S = stress_matrix(5, g.edges, rng.normal(size=g.m))
        assert np.allclose(S.sum(axis=1), 0.0)
        assert np.allclose(S, S.T)

    def test_equilibrium_stress_kills_configuration(self):
        P = generic(5, 2, 3)
        R = rigidity_matrix(P, WHEEL5.edges)
        assert numerical_rank(R) == 7
        w = left_null_space(R)[:, 0]
        S = stress_matrix(5, WHEEL5.edges, w)
        assert np.allclose(S @ P.coords, 0.0, atol=1e-10)
