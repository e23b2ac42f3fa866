"""Brute-force recomputations used to validate the closed-form constructors."""

from __future__ import annotations

import dataclasses
from fractions import Fraction

import numpy as np

from . import kernels
from .caps import default_caps
from .distances import DEFAULT_TOL, AuditReport, Check, approx_equal
from .errors import PreconditionError, ResourceError
from .graph import ONE_WAY, WeightedDigraph, arc_arrays, enumerate_simple_paths, separation_table
from .linalg import FLOAT, RATIONAL, backend_of, check_backend, convert, identity, zeros
from .measures import MeasureMatrix, stochastic_matrix


@dataclasses.dataclass
class ForestEnumeration:
    f: object
    matrix: np.ndarray
    count: int


def _forest_caps(g, caps):
    caps = caps or default_caps()
    if g.n > caps.forest_vertices or g.m > caps.forest_arcs:
        raise ResourceError(
            f"forest enumeration capped at n <= {caps.forest_vertices} and m <= {caps.forest_arcs}; "
            f"got n = {g.n}, m = {g.m}")


def enumerate_forests(g: WeightedDigraph, orientation="in", backend=RATIONAL, caps=None,
                      impl=None) -> ForestEnumeration:
    """Enumerate every spanning in-forest (or out-forest) of ``g``.

    In-forests: each vertex keeps at most one outgoing arc and the result is
    acyclic; ``F[i, j]`` sums forests where i lies in the tree rooted at j.
    Out-forests use incoming arcs instead; ``F'[i, j]`` sums forests where j
    lies in the tree rooted at i.
    """
    g = g.directed()
    if g.has_loops:
        raise PreconditionError("forest enumeration expects a loop-free digraph")
    _forest_caps(g, caps)
    tails, heads, weights = arc_arrays(g)
    if orientation == "in":
        child, parent = tails, heads
    elif orientation == "out":
        child, parent = heads, tails
    else:
        raise PreconditionError(f"unknown forest orientation {orientation!r}")
    f, acc = kernels.forest_sums(g.n, child, parent, weights, backend, impl)
    count, _ = kernels.forest_sums(g.n, child, parent, [1] * g.m, RATIONAL, impl)
    matrix = acc if orientation == "in" else acc.T.copy()
    return ForestEnumeration(f, matrix, int(count))


def enumerate_undirected_forests(g: WeightedDigraph, backend=RATIONAL) -> ForestEnumeration:
    """Rooted spanning forests of an undirected multigraph, enumerated directly.

    Every acyclic edge subset is a forest; each of its trees may be rooted at
    any of its vertices, so ``F[i, j]`` collects the weight of each forest in
    which i and j share a tree (rooting that tree at j).
    """
    if not g.undirected:
        raise PreconditionError("expected a graph flagged as undirected")
    n, edges = g.n, g.arcs
    if len(edges) > 20:
        raise ResourceError("undirected forest enumeration capped at 20 edges")
    f = convert(0, backend)
    mat = zeros(n, backend)
    count = 0
    for mask in range(1 << len(edges)):
        comp = list(range(n))

        def find(x):
            while comp[x] != x:
                comp[x] = comp[comp[x]]
                x = comp[x]
            return x

        w = convert(1, backend)
        acyclic = True
        for e, (u, v, x) in enumerate(edges):
            if not (mask >> e) & 1:
                continue
            ru, rv = find(u - 1), find(v - 1)
            if ru == rv:
                acyclic = False
                break
            comp[ru] = rv
            w = w * convert(x, backend)
        if not acyclic:
            continue
        count += 1
        roots = [find(v) for v in range(n)]
        sizes = {}
        for r in roots:
            sizes[r] = sizes.get(r, 0) + 1
        rooted = 1
        for s in sizes.values():
            rooted *= s
        f += w * rooted
        for i in range(n):
            for j in range(n):
                if roots[i] == roots[j]:
                    # trees other than the shared one keep every root choice
                    mat[i, j] += w * (rooted // sizes[roots[i]])
    return ForestEnumeration(f, mat, count)


def route_series(g: WeightedDigraph, epsilon, K: int, backend=FLOAT):
    """Partial sum of ``(P/(1+eps))^k`` for k = 0..K and an entrywise tail bound.

    Since P is row stochastic every power has entries in [0, 1], so the
    remainder is at most ``n * rho^(K+1) / (1 - rho)`` with ``rho = 1/(1+eps)``.
    """
    if K < 0:
        raise PreconditionError("K must be nonnegative")
    p = stochastic_matrix(g, epsilon, backend)
    eps = convert(epsilon, backend)
    rho = 1 / (1 + eps)
    step = p * rho
    term = identity(g.n, backend)
    total = term.copy()
    for _ in range(K):
        term = term.dot(step)
        total = total + term
    bound = rho ** (K + 1) * g.n / (1 - rho)
    return total, bound


def reliability_ie(g: WeightedDigraph, i: int, j: int, backend=RATIONAL, caps=None):
    """``p_ij`` by inclusion-exclusion over families of simple i->j paths.

    A family contributes the product of weights over the union of its arcs,
    with sign ``(-1)^(size+1)``.
    """
    caps = caps or default_caps()
    check_backend(backend)
    g = g.directed()
    if i == j:
        return convert(1, backend)
    paths = enumerate_simple_paths(g, i, j, caps=caps)
    if len(paths) > caps.ie_paths:
        raise ResourceError(f"inclusion-exclusion capped at {caps.ie_paths} paths, got {len(paths)}")
    weights = [convert(w, backend) for _, _, w in g.arcs]
    arcsets = [frozenset(p.arcs) for p in paths]
    total = convert(0, backend)

    # depth-first over subfamilies, carrying the running arc union
    stack = [(0, frozenset(), 0)]
    while stack:
        start, union, size = stack.pop()
        for idx in range(start, len(arcsets)):
            new = union | arcsets[idx]
            w = convert(1, backend)
            for a in new:
                w = w * weights[a]
            total += w if size % 2 == 0 else -w
            stack.append((idx + 1, new, size + 1))
    return total


def reliability_ie_matrix(g: WeightedDigraph, backend=RATIONAL, caps=None):
    g = g.directed()
    out = zeros(g.n, backend)
    for i in range(g.n):
        for j in range(g.n):
            out[i, j] = reliability_ie(g, i + 1, j + 1, backend, caps)
    return out


def path_tau_bruteforce(g: WeightedDigraph, tau, backend=RATIONAL, caps=None):
    """Path tau-accessibility summed directly over enumerated simple paths."""
    g = g.directed()
    tau = convert(tau, backend)
    out = zeros(g.n, backend)
    for i in range(g.n):
        for j in range(g.n):
            for p in enumerate_simple_paths(g, i + 1, j + 1, caps=caps):
                out[i, j] += tau ** p.length * convert(p.weight, backend)
    return out


def transitional_audit(s: MeasureMatrix, g: WeightedDigraph, mode=ONE_WAY, tol=DEFAULT_TOL,
                       keep_passing=True) -> AuditReport:
    """Check the transition inequality and the bottleneck identity for every triple.

    Triples (i, j, k) range over all n^3 combinations: ``s_ij s_jk <= s_ik s_jj``
    must hold, with equality exactly when every i->k path contains j.  Pairs
    additionally get ``s_ij s_ji <= s_ii s_jj``, strict for i != j.
    """
    if mode != ONE_WAY:
        raise PreconditionError("transitional audits use one-way separation")
    g = g.directed()
    m = s.matrix
    n = m.shape[0]
    if g.n != n:
        raise PreconditionError(f"measure is {n}x{n} but the graph has {g.n} vertices")
    exact = backend_of(m) == RATIONAL
    sep = separation_table(g, ONE_WAY)
    rep = AuditReport("transitional", tol, exact, keep_passing)

    def leq(a, b):
        return a <= b if exact else a <= b + tol * max(abs(a), abs(b))

    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = m[i, j] * m[j, k]
                rhs = m[i, k] * m[j, j]
                rep.add(Check((i + 1, j + 1, k + 1), "transition", lhs, rhs, leq(lhs, rhs)))
                equal = approx_equal(lhs, rhs, tol, exact)
                separated = bool(sep[i, j, k])
                note = ""
                if equal != separated:
                    note = "equality without separation" if equal else "separation without equality"
                rep.add(Check((i + 1, j + 1, k + 1), "bottleneck", lhs, rhs, equal == separated,
                              separated, note))
    for i in range(n):
        for j in range(n):
            lhs = m[i, j] * m[j, i]
            rhs = m[i, i] * m[j, j]
            rep.add(Check((i + 1, j + 1), "pair-inequality", lhs, rhs, leq(lhs, rhs)))
            if i != j:
                strict = lhs < rhs and not approx_equal(lhs, rhs, tol, exact)
                rep.add(Check((i + 1, j + 1), "pair-strict", lhs, rhs, strict))
    return rep
