"""Constructors for the five transitional-measure matrices.

* forest-in / forest-out: weights of spanning in-/out-forests, via the
  matrix forest theorem ``F = det(I+L) (I+L)^-1``;
* route: total route weights in the loop-augmented digraph, ``(I - P/(1+eps))^-1``
  with ``P = I - eps L``;
* path-tau: tau-damped weights of simple paths;
* reliability: probability that some path survives independent arc failures.
"""

from __future__ import annotations

import dataclasses
from fractions import Fraction
from typing import Optional

import numpy as np

from . import kernels
from .caps import default_caps
from .errors import PreconditionError, ResourceError
from .graph import WeightedDigraph, arc_arrays, laplacian
from .linalg import FLOAT, RATIONAL, backend_of, check_backend, convert, determinant, identity, invert

FOREST_IN = "forest-in"
FOREST_OUT = "forest-out"
ROUTE = "route"
PATH_TAU = "path-tau"
RELIABILITY = "reliability"
KINDS = (FOREST_IN, FOREST_OUT, ROUTE, PATH_TAU, RELIABILITY)

RAW = "raw"
KERNEL = "kernel"


@dataclasses.dataclass
class MeasureMatrix:
    matrix: np.ndarray
    kind: str
    params: dict = dataclasses.field(default_factory=dict)
    normalization: str = RAW
    stderr: Optional[np.ndarray] = None  # Monte Carlo estimates only

    @property
    def n(self):
        return self.matrix.shape[0]

    @property
    def backend(self):
        return backend_of(self.matrix)

    def scaled(self, c):
        """Copy with every entry multiplied by ``c`` (in this backend)."""
        c = convert(c, self.backend)
        return dataclasses.replace(self, matrix=self.matrix * c, params=dict(self.params))

    def check(self):
        """Raise unless the structural invariants of this kind hold."""
        m = self.matrix
        diag = [m[i, i] for i in range(self.n)]
        if any(not d > 0 for d in diag):
            raise PreconditionError(f"{self.kind}: diagonal entries must be positive")
        if self.kind in (FOREST_IN, FOREST_OUT, ROUTE) and any(x < 0 for x in m.flat):
            raise PreconditionError(f"{self.kind}: entries must be nonnegative")
        if self.kind in (PATH_TAU, RELIABILITY) and any(d != 1 for d in diag):
            raise PreconditionError(f"{self.kind}: diagonal entries must equal 1")
        return self


def _loop_free(g):
    g = g.directed()
    if g.has_loops:
        raise PreconditionError("measure constructors expect a loop-free digraph")
    return g


def forest_matrix(g: WeightedDigraph, orientation="in", normalization=RAW,
                  backend=FLOAT) -> MeasureMatrix:
    """In-forest matrix F (row Laplacian) or out-forest matrix F' (column Laplacian).

    ``kernel`` normalization returns ``(I+L)^-1``; ``raw`` multiplies it by
    the total forest weight ``f = det(I+L)``.
    """
    check_backend(backend)
    g = _loop_free(g)
    if orientation not in ("in", "out"):
        raise PreconditionError(f"unknown forest orientation {orientation!r}")
    if normalization not in (RAW, KERNEL):
        raise PreconditionError(f"unknown normalization {normalization!r}")
    lap = laplacian(g, "row" if orientation == "in" else "column", backend)
    shifted = identity(g.n, backend) + lap
    q = invert(shifted)
    f = determinant(shifted)
    matrix = f * q if normalization == RAW else q
    kind = FOREST_IN if orientation == "in" else FOREST_OUT
    return MeasureMatrix(matrix, kind, {"f": f}, normalization)


def max_route_epsilon(g: WeightedDigraph, backend=FLOAT):
    """Supremum of valid eps (``eps * max l_ii < 1``); None when every eps > 0 works."""
    lap = laplacian(_loop_free(g), "row", backend)
    top = max(lap[i, i] for i in range(lap.shape[0]))
    return None if top == 0 else 1 / top


def stochastic_matrix(g: WeightedDigraph, epsilon, backend=FLOAT):
    """``P = I - eps L``, row stochastic for admissible eps."""
    check_backend(backend)
    g = _loop_free(g)
    eps = convert(epsilon, backend)
    bound = max_route_epsilon(g, backend)
    if not eps > 0 or (bound is not None and not eps < bound):
        raise PreconditionError(
            f"epsilon must satisfy 0 < epsilon < 1/max(l_ii) = {bound}, got {epsilon}")
    return identity(g.n, backend) - eps * laplacian(g, "row", backend)


def route_matrix(g: WeightedDigraph, epsilon, backend=FLOAT) -> MeasureMatrix:
    """Route weights ``R = sum_k (P/(1+eps))^k = (I - P/(1+eps))^-1``."""
    p = stochastic_matrix(g, epsilon, backend)
    eps = convert(epsilon, backend)
    r = invert(identity(g.n, backend) - p / (1 + eps))
    return MeasureMatrix(r, ROUTE, {"epsilon": eps}, RAW)


def _path_polynomials(g, backend, caps):
    caps = caps or default_caps()
    g = _loop_free(g)
    if g.n > caps.path_vertices:
        raise ResourceError(f"path enumeration capped at n <= {caps.path_vertices}, got n = {g.n}")
    tails, heads, weights = arc_arrays(g)
    return kernels.path_sums(g.n, tails, heads, weights, backend)


def _evaluate(coeffs, tau, backend):
    n = coeffs.shape[0]
    tau = convert(tau, backend)
    powers = [convert(1, backend)]
    for _ in range(1, n):
        powers.append(powers[-1] * tau)
    out = np.empty((n, n), dtype=coeffs.dtype)
    for i in range(n):
        for j in range(n):
            acc = convert(0, backend)
            for length in range(n):
                if coeffs[i, j, length]:
                    acc += coeffs[i, j, length] * powers[length]
            out[i, j] = acc
    return out


def path_tau_matrix(g: WeightedDigraph, tau, backend=FLOAT, caps=None) -> MeasureMatrix:
    """``s_ij = sum over simple i->j paths of tau^length * weight``; s_ii = 1."""
    check_backend(backend)
    if not tau > 0:
        raise PreconditionError(f"tau must be positive, got {tau}")
    coeffs = _path_polynomials(g, backend, caps)
    return MeasureMatrix(_evaluate(coeffs, tau, backend), PATH_TAU, {"tau": convert(tau, backend)})


def default_tau_grid():
    return [Fraction(1, 2 ** k) for k in range(21)]


def tau_threshold_search(g: WeightedDigraph, grid=None, backend=RATIONAL, caps=None):
    """Largest grid tau whose path-tau matrix passes the one-way transitional audit.

    Returns None if no grid value passes.  This is an audited value, not a
    certified threshold: smaller untested values are not checked.
    """
    from .oracle import transitional_audit

    grid = default_tau_grid() if grid is None else list(grid)
    if not grid:
        raise PreconditionError("tau grid is empty")
    if any(not t > 0 for t in grid):
        raise PreconditionError("tau grid values must be positive")
    coeffs = _path_polynomials(g, backend, caps)
    for tau in sorted(grid, reverse=True):
        s = MeasureMatrix(_evaluate(coeffs, tau, backend), PATH_TAU, {"tau": convert(tau, backend)})
        if transitional_audit(s, g).ok:
            return tau
    return None


def _check_probabilities(g):
    for idx, (_, _, w) in enumerate(g.arcs):
        if not 0 < w <= 1:
            raise PreconditionError(f"arc {idx}: reliability weights must lie in (0, 1], got {w}")


def reliability_exact(g: WeightedDigraph, backend=FLOAT, caps=None) -> MeasureMatrix:
    """Connection reliabilities by enumerating all 2^m arc subsets."""
    check_backend(backend)
    caps = caps or default_caps()
    g = _loop_free(g)
    _check_probabilities(g)
    if g.m > caps.reliability_arcs:
        raise ResourceError(f"exact reliability capped at m <= {caps.reliability_arcs} arcs, got {g.m}")
    tails, heads, weights = arc_arrays(g)
    p = kernels.reliability_sums(g.n, tails, heads, weights, backend)
    return MeasureMatrix(p, RELIABILITY, {"method": "exact"})


def reliability_mc(g: WeightedDigraph, samples: int, seed: int = 0,
                   chunk: int = 65536) -> MeasureMatrix:
    """Monte Carlo connection reliabilities with a standard-error matrix.

    Each trial keeps every arc independently with probability equal to its
    weight.  Output depends only on (g, samples, seed).
    """
    g = _loop_free(g)
    _check_probabilities(g)
    if not isinstance(samples, (int, np.integer)) or samples < 1:
        raise PreconditionError(f"samples must be a positive integer, got {samples!r}")
    if g.n > 64:
        raise PreconditionError("Monte Carlo reliability supports n <= 64")
    rng = np.random.default_rng(seed)
    tails, heads, weights = arc_arrays(g)
    probs = np.array([float(w) for w in weights])
    n = g.n
    counts = np.zeros((n, n), dtype=np.int64)
    bits = np.left_shift(np.uint64(1), np.arange(n, dtype=np.uint64))
    done = 0
    while done < samples:
        size = min(chunk, samples - done)
        alive = rng.random((size, g.m)) < probs
        src = np.tile(bits, (size, 1))  # src[:, v] = sources reaching v
        for _ in range(max(n - 1, 0)):
            before = src.copy()
            for e in range(g.m):
                t, h = tails[e], heads[e]
                src[:, h] |= np.where(alive[:, e], src[:, t], np.uint64(0))
            if np.array_equal(before, src):
                break
        for i in range(n):
            counts[i] += ((src >> np.uint64(i)) & np.uint64(1)).sum(axis=0).astype(np.int64)
        done += size
    p = counts / samples
    np.fill_diagonal(p, 1.0)
    se = np.sqrt(p * (1 - p) / samples)
    return MeasureMatrix(p, RELIABILITY, {"method": "mc", "samples": int(samples), "seed": seed},
                         stderr=se)
