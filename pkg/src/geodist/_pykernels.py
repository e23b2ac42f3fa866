"""Pure-Python enumeration kernels.

Reference implementation of the hot loops; ``_ckernels.pyx`` mirrors these
signatures.  Weights may be any numbers supporting ``+`` and ``*`` (ints,
floats, Fractions), so this module never overflows.
"""

import numpy as np


def _zeros(n, like):
    out = np.empty((n, n), dtype=object)
    out.fill(like * 0)
    return out


def forest_sums(n, child, parent, weights, unit):
    """Sum the weights of all spanning parent-pointer forests.

    Each vertex v either keeps no parent (contributing ``unit``) or picks one
    arc a with ``child[a] == v`` (contributing ``weights[a]``); assignments
    with a cycle are skipped.  Returns ``(total, M)`` with ``M[v, root(v)]``
    accumulating the weight of every forest in which v's tree has that root.
    """
    options = [[] for _ in range(n)]
    for a in range(len(child)):
        options[int(child[a])].append(a)
    total = unit * 0
    acc = _zeros(n, unit)
    choice = [-1] * n
    par = [-1] * n
    root = [-1] * n

    while True:
        w = unit * 0 + 1
        for v in range(n):
            c = choice[v]
            if c < 0:
                par[v] = -1
                w = w * unit
            else:
                a = options[v][c]
                par[v] = int(parent[a])
                w = w * weights[a]
        if _roots(n, par, root):
            total = total + w
            for v in range(n):
                acc[v, root[v]] = acc[v, root[v]] + w
        # mixed-radix increment over per-vertex choices
        v = 0
        while v < n:
            choice[v] += 1
            if choice[v] < len(options[v]):
                break
            choice[v] = -1
            v += 1
        if v == n:
            break
    return total, acc


def _roots(n, par, root):
    """Fill root[v] for a parent-pointer array; False if it has a cycle."""
    state = [0] * n  # 0 unvisited, 1 on stack, 2 resolved
    for s in range(n):
        if state[s]:
            continue
        stack = []
        v = s
        while v >= 0 and state[v] == 0:
            state[v] = 1
            stack.append(v)
            v = par[v]
        if v >= 0 and state[v] == 1:
            return False
        r = stack[-1] if v < 0 else root[v]
        for u in stack:
            root[u] = r
            state[u] = 2
    return True


def reliability_sums(n, tails, heads, up, down):
    """Sum over all arc subsets of prod(up present, down absent) * [j reachable from i].

    Returns an n x n matrix; the diagonal equals the total subset mass.
    """
    m = len(tails)
    total = up[0] * 0 if m else 1
    acc = _zeros(n, total)
    for mask in range(1 << m):
        w = total * 0 + 1
        for e in range(m):
            w = w * (up[e] if (mask >> e) & 1 else down[e])
        # src[v] = bitmask of sources that reach v
        src = [1 << v for v in range(n)]
        changed = True
        while changed:
            changed = False
            for e in range(m):
                if (mask >> e) & 1:
                    t, h = int(tails[e]), int(heads[e])
                    new = src[h] | src[t]
                    if new != src[h]:
                        src[h] = new
                        changed = True
        for j in range(n):
            bits = src[j]
            for i in range(n):
                if (bits >> i) & 1:
                    acc[i, j] = acc[i, j] + w
    return acc


def path_sums(n, tails, heads, weights, unit):
    """Weights of simple paths grouped by endpoints and length.

    Returns ``C`` with shape (n, n, n): ``C[i, j, l]`` is the summed weight
    of simple i->j paths of length l, each scaled by ``unit ** (n-1-l)`` so
    integer numerators share the denominator ``unit ** (n-1)``.
    """
    out = [[] for _ in range(n)]
    for a in range(len(tails)):
        out[int(tails[a])].append((int(heads[a]), a))
    zero = unit * 0
    acc = np.empty((n, n, n), dtype=object)
    acc.fill(zero)
    powers = [unit * 0 + 1]
    for _ in range(n):
        powers.append(powers[-1] * unit)

    for s in range(n):
        on_path = [False] * n
        on_path[s] = True
        # iterative DFS; frames hold (vertex, next arc position, weight so far)
        stack = [(s, 0, zero + 1)]
        acc[s, s, 0] = acc[s, s, 0] + powers[n - 1]
        while stack:
            v, pos, w = stack[-1]
            if pos == len(out[v]):
                stack.pop()
                on_path[v] = False
                continue
            stack[-1] = (v, pos + 1, w)
            h, a = out[v][pos]
            if on_path[h]:
                continue
            nw = w * weights[a]
            depth = len(stack)
            acc[s, h, depth] = acc[s, h, depth] + nw * powers[n - 1 - depth]
            on_path[h] = True
            stack.append((h, 0, nw))
    return acc
