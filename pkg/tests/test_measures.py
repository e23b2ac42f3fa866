import random
from fractions import Fraction

import numpy as np
import pytest

from geodist import (PreconditionError, ResourceError, WeightedDigraph, determinant,
                     enumerate_forests, forest_matrix, identity, laplacian, make_graph,
                     path_tau_matrix, reliability_exact, reliability_ie, reliability_mc,
                     route_matrix, stochastic_matrix, tau_threshold_search, transform)
from geodist.caps import Caps
from geodist.measures import max_route_epsilon
from geodist.oracle import reliability_ie_matrix
from geodist.random_graphs import random_digraph, random_strong_digraph

C2 = make_graph(2, [(1, 2), (2, 1)])
C3 = make_graph(3, [(1, 2), (2, 3), (3, 1)])
P3U = WeightedDigraph(3, ((1, 2, 1), (2, 3, 1)), undirected=True)
CHORD = make_graph(3, [(1, 2), (2, 3), (1, 3)])
HALF = Fraction(1, 2)


def as_lists(m):
    return [[x for x in row] for row in m]


class TestForest:
    def test_two_cycle(self):
        s = forest_matrix(C2, "in", "raw", "rational")
        assert as_lists(s.matrix) == [[2, 1], [1, 2]] and s.params["f"] == 3

    def test_three_cycle(self):
        s = forest_matrix(C3, "in", "raw", "rational")
        shift = np.roll(np.eye(3, dtype=int), 1, axis=1)
        expected = 4 * np.eye(3, dtype=int) + 2 * shift + shift @ shift
        assert as_lists(s.matrix) == expected.tolist()
        assert as_lists(s.matrix)[0] == [4, 2, 1] and s.params["f"] == 7

    def test_symmetrized_path(self):
        s = forest_matrix(P3U, "in", "raw", "rational")
        assert as_lists(s.matrix) == [[5, 2, 1], [2, 4, 2], [1, 2, 5]] and s.params["f"] == 8

    def test_kernel_normalization(self):
        q = forest_matrix(C3, "in", "kernel", "rational").matrix
        shifted = identity(3, "rational") + laplacian(C3, "row", "rational")
        assert (shifted.dot(q) == identity(3, "rational")).all()
        np.testing.assert_allclose(forest_matrix(C3, "in", "kernel").matrix, np.array(q, dtype=float))

    def test_out_is_transpose_of_reversed_in(self):
        rng = random.Random(11)
        for _ in range(30):
            g = random_digraph(rng, rng.randint(1, 5), 0.5)
            out = forest_matrix(g, "out", "raw", "rational").matrix
            rev = forest_matrix(transform(g, "reverse"), "in", "raw", "rational").matrix
            assert (out == rev.T).all()

    def test_matches_enumeration(self):
        rng = random.Random(12)
        for _ in range(40):
            g = random_digraph(rng, rng.randint(1, 6), rng.uniform(0.2, 0.6), max_arcs=14)
            for orientation in ("in", "out"):
                s = forest_matrix(g, orientation, "raw", "rational")
                en = enumerate_forests(g, orientation)
                assert (s.matrix == en.matrix).all() and s.params["f"] == en.f
                if orientation == "in":
                    # rows of F sum to f
                    assert all(sum(row) == en.f for row in s.matrix)
                else:
                    assert all(sum(col) == en.f for col in s.matrix.T)
            s.check()

    def test_loops_rejected(self):
        with pytest.raises(PreconditionError):
            forest_matrix(WeightedDigraph(2, ((1, 1, 1),), allow_loops=True))


class TestRoute:
    def test_two_cycle(self):
        p = stochastic_matrix(C2, HALF, "rational")
        assert as_lists(p) == [[HALF, HALF], [HALF, HALF]]
        r = route_matrix(C2, HALF, "rational")
        assert as_lists(r.matrix) == [[2, 1], [1, 2]]

    def test_epsilon_bound(self):
        with pytest.raises(PreconditionError, match="1/max"):
            route_matrix(C2, 1.5)
        with pytest.raises(PreconditionError):
            route_matrix(C2, 1)
        with pytest.raises(PreconditionError):
            route_matrix(C2, 0)
        assert max_route_epsilon(C2, "rational") == 1

    def test_edgeless_accepts_any_epsilon(self):
        # only the vertex loops of weight 1/(1+eps) remain: r_ii = 1 + 1/eps
        r = route_matrix(make_graph(2, []), 100, "rational")
        assert as_lists(r.matrix) == [[Fraction(101, 100), 0], [0, Fraction(101, 100)]]

    def test_proportional_to_forests(self):
        rng = random.Random(13)
        for _ in range(30):
            g = random_digraph(rng, rng.randint(1, 5), 0.5)
            bound = max_route_epsilon(g, "rational") or Fraction(1)
            f = forest_matrix(g, "in", "raw", "rational")
            for eps in (bound / 2, bound / 7, bound * Fraction(9, 10)):
                r = route_matrix(g, eps, "rational")
                assert (r.matrix == (1 + 1 / eps) / f.params["f"] * f.matrix).all()
                assert all(r.matrix[i, i] >= 1 for i in range(g.n))
                p = stochastic_matrix(g, eps, "rational")
                assert all(sum(row) == 1 for row in p)
                assert all(0 <= x <= 1 for x in p.flat)


class TestPathTau:
    def test_path(self):
        s = path_tau_matrix(make_graph(3, [(1, 2), (2, 3)]), Fraction(1, 10), "rational").matrix
        assert as_lists(s) == [[1, Fraction(1, 10), Fraction(1, 100)], [0, 1, Fraction(1, 10)], [0, 0, 1]]

    def test_chord(self):
        s = path_tau_matrix(CHORD, Fraction(1, 10), "rational").matrix
        assert s[0, 2] == Fraction(11, 100)
        assert path_tau_matrix(CHORD, 0.1).matrix[0, 2] == pytest.approx(0.11)

    def test_edgeless(self):
        assert (path_tau_matrix(make_graph(3, []), 0.5).matrix == np.eye(3)).all()

    def test_invalid(self):
        with pytest.raises(PreconditionError):
            path_tau_matrix(C2, 0)
        with pytest.raises(ResourceError):
            path_tau_matrix(make_graph(5, []), 0.5, caps=Caps(path_vertices=4))


class TestThresholdSearch:
    def test_path_passes_everywhere(self):
        g = make_graph(3, [(1, 2), (2, 3)])
        assert tau_threshold_search(g) == 1
        assert tau_threshold_search(g, [Fraction(1, 3), 5]) == 5

    def test_edgeless(self):
        assert tau_threshold_search(make_graph(3, [])) == 1

    def test_three_cycle(self):
        # tau = 1 gives s_13 s_32 = 1 = s_12 s_33 although 3 does not cut 1 -> 2
        assert tau_threshold_search(C3) == HALF

    def test_random_strong_positive(self):
        rng = random.Random(14)
        g = random_strong_digraph(rng, 6, max_arcs=16)
        assert tau_threshold_search(g) > 0

    def test_none_when_grid_fails(self):
        assert tau_threshold_search(C3, [1]) is None

    def test_empty_grid(self):
        with pytest.raises(PreconditionError):
            tau_threshold_search(C3, [])


class TestReliability:
    def test_parallel(self):
        g = make_graph(2, [(1, 2, HALF), (1, 2, HALF)])
        assert reliability_exact(g, "rational").matrix[0, 1] == Fraction(3, 4)

    def test_chord(self):
        g = make_graph(3, [(1, 2, HALF), (2, 3, HALF), (1, 3, HALF)])
        assert reliability_exact(g, "rational").matrix[0, 2] == Fraction(5, 8)
        assert reliability_exact(g).matrix[0, 2] == pytest.approx(0.625)

    def test_diagonal(self):
        rng = random.Random(15)
        g = random_digraph(rng, 5, 0.4, (HALF, Fraction(1, 3)))
        s = reliability_exact(g, "rational")
        assert all(s.matrix[i, i] == 1 for i in range(5))
        s.check()

    def test_weight_range(self):
        with pytest.raises(PreconditionError):
            reliability_exact(make_graph(2, [(1, 2, 2)]))
        with pytest.raises(PreconditionError):
            reliability_mc(make_graph(2, [(1, 2, 2)]), 10)

    def test_cap(self):
        g = make_graph(2, [(1, 2, HALF)] * 3)
        with pytest.raises(ResourceError):
            reliability_exact(g, caps=Caps(reliability_arcs=2))

    def test_matches_inclusion_exclusion(self):
        rng = random.Random(16)
        for _ in range(20):
            g = random_digraph(rng, rng.randint(2, 5), 0.45, (HALF, Fraction(3, 4), 1), max_arcs=10)
            try:
                ie = reliability_ie_matrix(g)
            except ResourceError:
                continue
            assert (reliability_exact(g, "rational").matrix == ie).all()

    def test_mc_close_to_exact(self):
        g = make_graph(2, [(1, 2, HALF), (1, 2, HALF)])
        est = reliability_mc(g, 100_000, seed=3)
        assert abs(est.matrix[0, 1] - 0.75) <= 3 * est.stderr[0, 1]
        assert est.matrix[1, 0] == 0 and est.matrix[0, 0] == 1

    def test_mc_single_sample(self):
        g = make_graph(3, [(1, 2, HALF), (2, 3, HALF), (3, 1, HALF)])
        for seed in range(5):
            m = reliability_mc(g, 1, seed).matrix
            assert set(np.unique(m)) <= {0.0, 1.0} and (np.diag(m) == 1).all()

    def test_mc_deterministic(self):
        g = make_graph(3, [(1, 2, HALF), (2, 3, Fraction(3, 4)), (3, 1, HALF), (1, 3, 0.2)])
        a = reliability_mc(g, 5000, seed=9, chunk=700)
        b = reliability_mc(g, 5000, seed=9, chunk=700)
        assert (a.matrix == b.matrix).all() and (a.stderr == b.stderr).all()

    def test_mc_zero_samples(self):
        with pytest.raises(PreconditionError):
            reliability_mc(C2, 0)


def test_forest_total_is_determinant():
    rng = random.Random(17)
    for _ in range(20):
        g = random_digraph(rng, rng.randint(1, 5), 0.5)
        shifted = identity(g.n, "rational") + laplacian(g, "row", "rational")
        assert enumerate_forests(g).f == determinant(shifted)


def test_reliability_ie_single_value():
    g = make_graph(3, [(1, 2, HALF), (2, 3, HALF)])
    assert reliability_ie(g, 1, 3) == Fraction(1, 4)
