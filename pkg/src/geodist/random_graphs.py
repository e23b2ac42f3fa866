"""Seeded random digraph generators for tests, audits and benchmarks."""

from __future__ import annotations

import random
from fractions import Fraction

from .graph import WeightedDigraph, is_strong


def _pick(rng, weights):
    return Fraction(rng.choice(list(weights)))


def random_digraph(rng: random.Random, n: int, density=0.4, weights=(1, 2, 3), max_arcs=None,
                   parallel=0.1) -> WeightedDigraph:
    """Loop-free digraph: each ordered pair gets an arc with probability ``density``,
    occasionally a parallel second arc."""
    arcs = []
    for t in range(1, n + 1):
        for h in range(1, n + 1):
            if t != h and rng.random() < density:
                arcs.append((t, h, _pick(rng, weights)))
                if rng.random() < parallel:
                    arcs.append((t, h, _pick(rng, weights)))
    rng.shuffle(arcs)
    if max_arcs is not None:
        arcs = arcs[:max_arcs]
    return WeightedDigraph(n, tuple(arcs))


def random_strong_digraph(rng: random.Random, n: int, weights=(1, 2, 3), max_arcs=16,
                          parallel=0.1, tries=1000) -> WeightedDigraph:
    """Rejection-sample a strongly connected digraph with at most ``max_arcs`` arcs."""
    for _ in range(tries):
        density = rng.uniform(0.3, 0.9)
        g = random_digraph(rng, n, density, weights, None, parallel)
        if g.m <= max_arcs and is_strong(g):
            return g
    raise RuntimeError(f"no strong digraph found with n={n}, max_arcs={max_arcs}")


def random_dag(rng: random.Random, n: int, density=0.5, weights=(Fraction(1, 2),),
               max_arcs=None, parallel=0.1) -> WeightedDigraph:
    """Acyclic digraph respecting a random topological order."""
    order = list(range(1, n + 1))
    rng.shuffle(order)
    arcs = []
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < density:
                arcs.append((order[a], order[b], _pick(rng, weights)))
                if rng.random() < parallel:
                    arcs.append((order[a], order[b], _pick(rng, weights)))
    if max_arcs is not None:
        arcs = arcs[:max_arcs]
    return WeightedDigraph(n, tuple(arcs))


def random_connected_undirected(rng: random.Random, n: int, extra=0.3, weights=(1, 2, 3)):
    """Random spanning tree plus extra edges, flagged undirected."""
    edges = []
    for v in range(2, n + 1):
        edges.append((rng.randint(1, v - 1), v, _pick(rng, weights)))
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            if rng.random() < extra:
                edges.append((u, v, _pick(rng, weights)))
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    edges = [(perm[u - 1], perm[v - 1], w) for u, v, w in edges]
    return WeightedDigraph(n, tuple(edges), undirected=True)
