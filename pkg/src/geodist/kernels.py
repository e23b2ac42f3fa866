"""Dispatch for the enumeration kernels.

The compiled module ``_ckernels`` is used when it imports, unless the
``GEODIST_PURE_PYTHON`` environment variable is set.  Exact (rational) work
goes through the compiled int64 path after scaling all weights to integer
numerators over a common denominator; when a conservative bound says int64
could overflow, the pure-Python kernel (arbitrary-precision ints) runs instead.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction

import numpy as np

from . import _pykernels
from .linalg import FLOAT, RATIONAL, check_backend

try:
    from . import _ckernels
except ImportError:  # pragma: no cover - depends on the build
    _ckernels = None

INT64_SAFE = 1 << 62
PYTHON = "python"
COMPILED = "compiled"

HAVE_COMPILED = _ckernels is not None
DEFAULT_IMPL = COMPILED if HAVE_COMPILED and not os.environ.get("GEODIST_PURE_PYTHON") else PYTHON


def _resolve(impl):
    impl = impl or DEFAULT_IMPL
    if impl == COMPILED and not HAVE_COMPILED:
        raise RuntimeError("compiled kernels are not available in this build")
    if impl not in (PYTHON, COMPILED):
        raise ValueError(f"unknown kernel implementation {impl!r}")
    return impl


def _scale(weights):
    """Integer numerators and their common denominator."""
    fr = [Fraction(w) for w in weights]
    denom = math.lcm(*(f.denominator for f in fr)) if fr else 1
    return [int(f * denom) for f in fr], denom


def _idx(a):
    return np.ascontiguousarray(a, dtype=np.int64)


def _to_fractions(arr, denom):
    out = np.empty(arr.shape, dtype=object)
    for idx, x in np.ndenumerate(arr):
        out[idx] = Fraction(int(x), denom)
    return out


def _to_float(arr):
    return np.array(arr, dtype=np.float64)


def forest_sums(n, child, parent, weights, backend=FLOAT, impl=None):
    """``(total, M)`` over spanning parent-pointer forests; see ``_pykernels.forest_sums``."""
    check_backend(backend)
    impl = _resolve(impl)
    child, parent = _idx(child), _idx(parent)
    if backend == FLOAT:
        w = [float(x) for x in weights]
        if impl == COMPILED:
            total, acc = _ckernels.forest_sums(n, child, parent, np.array(w, dtype=np.float64), 1.0)
        else:
            total, acc = _pykernels.forest_sums(n, child, parent, w, 1.0)
        return float(total), _to_float(acc)

    nums, denom = _scale(weights)
    if impl == COMPILED:
        per_vertex = [denom] * n
        for a, c in enumerate(child):
            per_vertex[c] += nums[a]
        if math.prod(per_vertex) >= INT64_SAFE:
            impl = PYTHON
    if impl == COMPILED:
        total, acc = _ckernels.forest_sums(n, child, parent, np.array(nums, dtype=np.int64), denom)
    else:
        total, acc = _pykernels.forest_sums(n, child, parent, nums, denom)
    scale = denom ** n
    return Fraction(int(total), scale), _to_fractions(acc, scale)


def reliability_sums(n, tails, heads, weights, backend=FLOAT, impl=None):
    """Connection probabilities by arc-subset enumeration (weights are survival probabilities)."""
    check_backend(backend)
    impl = _resolve(impl)
    tails, heads = _idx(tails), _idx(heads)
    m = len(tails)
    if impl == COMPILED and (n > 64 or m > 62):
        impl = PYTHON
    if backend == FLOAT:
        up = [float(x) for x in weights]
        down = [1.0 - x for x in up]
        if impl == COMPILED:
            acc = _ckernels.reliability_sums(n, tails, heads, np.array(up), np.array(down))
        else:
            acc = _pykernels.reliability_sums(n, tails, heads, up, down)
        return _to_float(acc)

    nums, denom = _scale(weights)
    down = [denom - x for x in nums]
    if impl == COMPILED and denom ** m >= INT64_SAFE:
        impl = PYTHON
    if impl == COMPILED:
        acc = _ckernels.reliability_sums(n, tails, heads, np.array(nums, dtype=np.int64),
                                         np.array(down, dtype=np.int64))
    else:
        acc = _pykernels.reliability_sums(n, tails, heads, nums, down)
    return _to_fractions(acc, denom ** m)


def path_sums(n, tails, heads, weights, backend=FLOAT, impl=None):
    """``C[i, j, l]``: total weight of simple i->j paths with l arcs."""
    check_backend(backend)
    impl = _resolve(impl)
    tails, heads = _idx(tails), _idx(heads)
    if backend == FLOAT:
        w = [float(x) for x in weights]
        if impl == COMPILED:
            acc = _ckernels.path_sums(n, tails, heads, np.array(w, dtype=np.float64), 1.0)
        else:
            acc = _pykernels.path_sums(n, tails, heads, w, 1.0)
        return _to_float(acc)

    nums, denom = _scale(weights)
    if impl == COMPILED:
        out_sum = [0] * n
        for a, t in enumerate(tails):
            out_sum[t] += nums[a]
        base = max([denom] + out_sum)
        if n * base ** max(n - 1, 0) >= INT64_SAFE:
            impl = PYTHON
    if impl == COMPILED:
        acc = _ckernels.path_sums(n, tails, heads, np.array(nums, dtype=np.int64), denom)
    else:
        acc = _pykernels.path_sums(n, tails, heads, nums, denom)
    return _to_fractions(acc, denom ** max(n - 1, 0))


__all__ = ["forest_sums", "reliability_sums", "path_sums", "HAVE_COMPILED", "DEFAULT_IMPL",
           "PYTHON", "COMPILED", "RATIONAL", "FLOAT"]
