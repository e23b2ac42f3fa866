import random
from fractions import Fraction

import numpy as np
import pytest

from geodist import enumerate_simple_paths, kernels, make_graph
from geodist.graph import arc_arrays
from geodist.random_graphs import random_dag, random_digraph
from tests.oracles import subset_reliability


def _graphs(seed, count, max_n=6, weights=(1, 2, 3)):
    rng = random.Random(seed)
    return [random_digraph(rng, rng.randint(1, max_n), rng.uniform(0.2, 0.7), weights, max_arcs=12)
            for _ in range(count)]


def test_forest_sums_agree(impl):
    for g in _graphs(1, 40):
        t, h, w = arc_arrays(g)
        f, acc = kernels.forest_sums(g.n, t, h, w, "rational", impl)
        f_ref, acc_ref = kernels.forest_sums(g.n, t, h, w, "rational", kernels.PYTHON)
        assert f == f_ref and (acc == acc_ref).all()
        # each forest roots every vertex exactly once
        assert all(sum(row) == f for row in acc)
        ff, accf = kernels.forest_sums(g.n, t, h, w, "float", impl)
        assert ff == pytest.approx(float(f))
        np.testing.assert_allclose(accf, np.array(acc, dtype=float))


def test_reliability_sums_match_subset_oracle(impl):
    rng = random.Random(2)
    for _ in range(25):
        n = rng.randint(1, 5)
        g = random_digraph(rng, n, 0.5, (Fraction(1, 2), Fraction(3, 4), Fraction(1, 3), 1), max_arcs=9)
        t, h, w = arc_arrays(g)
        p = kernels.reliability_sums(n, t, h, w, "rational", impl)
        for i in range(n):
            for j in range(n):
                assert p[i, j] == subset_reliability(g.arcs, n, i + 1, j + 1)
        pf = kernels.reliability_sums(n, t, h, w, "float", impl)
        np.testing.assert_allclose(pf, np.array(p, dtype=float), rtol=1e-12)


def test_path_sums_match_enumeration(impl):
    for g in _graphs(3, 30, weights=(1, Fraction(1, 2), Fraction(2, 3))):
        t, h, w = arc_arrays(g)
        c = kernels.path_sums(g.n, t, h, w, "rational", impl)
        for i in range(g.n):
            for j in range(g.n):
                expect = [Fraction(0)] * g.n
                for p in enumerate_simple_paths(g, i + 1, j + 1):
                    expect[p.length] += p.weight
                assert list(c[i, j]) == expect
        cf = kernels.path_sums(g.n, t, h, w, "float", impl)
        np.testing.assert_allclose(cf, np.array(c, dtype=float), rtol=1e-12)


def test_overflow_falls_back_to_exact_python():
    # weights with large coprime denominators overflow int64 when scaled
    g = make_graph(4, [(1, 2, Fraction(1, 1000003)), (2, 3, Fraction(1, 999983)),
                       (3, 4, Fraction(1, 1000033)), (4, 1, Fraction(1, 7919))])
    t, h, w = arc_arrays(g)
    f, acc = kernels.forest_sums(4, t, h, w, "rational")
    f_ref, acc_ref = kernels.forest_sums(4, t, h, w, "rational", kernels.PYTHON)
    assert f == f_ref and (acc == acc_ref).all()
    p = kernels.reliability_sums(4, t, h, w, "rational")
    assert p[0, 3] == Fraction(1, 1000003) * Fraction(1, 999983) * Fraction(1, 1000033)


def test_dag_reliability_diagonal(impl):
    rng = random.Random(5)
    g = random_dag(rng, 5, 0.6, (Fraction(1, 2),))
    t, h, w = arc_arrays(g)
    p = kernels.reliability_sums(5, t, h, w, "rational", impl)
    assert all(p[i, i] == 1 for i in range(5))


def test_empty_graph(impl):
    empty = np.zeros(0, dtype=np.int64)
    f, acc = kernels.forest_sums(3, empty, empty, [], "rational", impl)
    assert f == 1 and (acc == np.eye(3, dtype=int)).all()
    assert (kernels.reliability_sums(3, empty, empty, [], "float", impl) == np.eye(3)).all()
    c = kernels.path_sums(3, empty, empty, [], "float", impl)
    assert (c[:, :, 0] == np.eye(3)).all() and not c[:, :, 1:].any()


def test_unknown_impl():
    with pytest.raises(ValueError):
        kernels.forest_sums(1, [], [], [], "float", "fortran")
