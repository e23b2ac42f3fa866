"""Small independent oracles used only by the tests."""

import itertools
from fractions import Fraction


def leibniz_det(rows):
    n = len(rows)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        term = Fraction(-1 if inversions % 2 else 1)
        for i, j in enumerate(perm):
            term *= rows[i][j]
        total += term
    return total


def all_simple_paths(n, arcs, i, k, exclude=None):
    """Vertex sequences of simple i->k paths (1-based, parallel arcs merged)."""
    succ = {v: sorted({h for t, h, *_ in arcs if t == v}) for v in range(1, n + 1)}
    out = []

    def go(path):
        v = path[-1]
        if v == k:
            out.append(tuple(path))
            return
        for h in succ[v]:
            if h not in path and h != exclude:
                go(path + [h])

    if i != exclude:
        go([i])
    return out


def separated_by_enumeration(n, arcs, i, j, k):
    if j in (i, k):
        return True
    paths = all_simple_paths(n, arcs, i, k)
    return all(j in p for p in paths)


def subset_reliability(arcs, n, i, j):
    """Connection probability by enumerating arc subsets with an explicit DFS."""
    m = len(arcs)
    total = Fraction(0)
    for mask in range(1 << m):
        prob = Fraction(1)
        alive = []
        for e, (t, h, w) in enumerate(arcs):
            if mask >> e & 1:
                prob *= Fraction(w)
                alive.append((t, h))
            else:
                prob *= 1 - Fraction(w)
        seen, stack = {i}, [i]
        while stack:
            v = stack.pop()
            for t, h in alive:
                if t == v and h not in seen:
                    seen.add(h)
                    stack.append(h)
        if j in seen:
            total += prob
    return total
