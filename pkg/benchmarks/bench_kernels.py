"""Time the compiled enumeration kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3] [--backend rational|float]
"""

import argparse
import random
import time
from fractions import Fraction

from geodist import kernels
from geodist.graph import arc_arrays
from geodist.random_graphs import random_strong_digraph

CASES = {
    # name: (n, max_arcs, weights)
    "forest": (8, 16, (1, 2, 3)),
    "reliability": (7, 18, (Fraction(1, 2), Fraction(3, 4), Fraction(1, 3))),
    "path": (10, 30, (1, Fraction(1, 2), 2)),
}


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - start)
    return min(times), out


def _same(a, b):
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    try:
        return bool((a == b).all())
    except AttributeError:
        return a == b


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--backend", choices=("rational", "float"), default="rational")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    if not kernels.HAVE_COMPILED:
        print("compiled kernels unavailable; build with `pip install -e . --no-build-isolation`")
        return 1

    rng = random.Random(args.seed)
    print(f"{'kernel':<12} {'n':>2} {'m':>3} {'python s':>10} {'compiled s':>11} {'speedup':>8}  agree")
    for name, (n, max_arcs, weights) in CASES.items():
        g = random_strong_digraph(rng, n, weights=weights, max_arcs=max_arcs)
        t, h, w = arc_arrays(g)
        fn = getattr(kernels, f"{name}_sums")
        py_t, py_out = _best(lambda: fn(g.n, t, h, w, args.backend, kernels.PYTHON), args.repeat)
        c_t, c_out = _best(lambda: fn(g.n, t, h, w, args.backend, kernels.COMPILED), args.repeat)
        print(f"{name:<12} {g.n:>2} {g.m:>3} {py_t:>10.4f} {c_t:>11.4f} {py_t / c_t:>7.1f}x  "
              f"{_same(py_out, c_out)}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
