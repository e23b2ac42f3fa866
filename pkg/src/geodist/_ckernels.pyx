# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled enumeration kernels; same contracts as ``_pykernels``.

int64 inputs carry integer numerators over a common denominator; callers
check overflow bounds before choosing this path.
"""

import numpy as np

from libc.stdint cimport int64_t, uint64_t

ctypedef fused num_t:
    int64_t
    double


cdef inline bint _roots(Py_ssize_t n, int64_t[::1] par, int64_t[::1] root,
                        int64_t[::1] state, int64_t[::1] stack) nogil:
    cdef Py_ssize_t s, top, u
    cdef int64_t v, r
    for s in range(n):
        state[s] = 0
    for s in range(n):
        if state[s]:
            continue
        top = 0
        v = s
        while v >= 0 and state[v] == 0:
            state[v] = 1
            stack[top] = v
            top += 1
            v = par[v]
        if v >= 0 and state[v] == 1:
            return False
        if v < 0:
            r = stack[top - 1]
        else:
            r = root[v]
        for u in range(top):
            root[stack[u]] = r
            state[stack[u]] = 2
    return True


def forest_sums(Py_ssize_t n, const int64_t[::1] child, const int64_t[::1] parent,
                const num_t[::1] weights, num_t unit):
    cdef Py_ssize_t m = child.shape[0]
    cdef Py_ssize_t a, v, k
    dtype = np.int64 if num_t is int64_t else np.float64

    # CSR layout of per-vertex options
    start_arr = np.zeros(n + 1, dtype=np.int64)
    cdef int64_t[::1] start = start_arr
    for a in range(m):
        start[child[a] + 1] += 1
    for v in range(n):
        start[v + 1] += start[v]
    opts_arr = np.zeros(max(m, 1), dtype=np.int64)
    cdef int64_t[::1] opts = opts_arr
    fill_arr = start_arr[:n].copy()
    cdef int64_t[::1] fill = fill_arr
    for a in range(m):
        opts[fill[child[a]]] = a
        fill[child[a]] += 1

    acc_arr = np.zeros((n, n), dtype=dtype)
    cdef num_t[:, ::1] acc = acc_arr
    cdef int64_t[::1] choice = np.full(n, -1, dtype=np.int64)
    cdef int64_t[::1] par = np.full(n, -1, dtype=np.int64)
    cdef int64_t[::1] root = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] state = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] stack = np.zeros(n, dtype=np.int64)
    cdef num_t total = 0
    cdef num_t w

    with nogil:
        while True:
            w = 1
            for v in range(n):
                if choice[v] < 0:
                    par[v] = -1
                    w = w * unit
                else:
                    a = opts[start[v] + choice[v]]
                    par[v] = parent[a]
                    w = w * weights[a]
            if _roots(n, par, root, state, stack):
                total += w
                for v in range(n):
                    acc[v, root[v]] += w
            v = 0
            while v < n:
                choice[v] += 1
                if choice[v] < start[v + 1] - start[v]:
                    break
                choice[v] = -1
                v += 1
            if v == n:
                break
    return total, acc_arr


def reliability_sums(Py_ssize_t n, const int64_t[::1] tails, const int64_t[::1] heads,
                     const num_t[::1] up, const num_t[::1] down):
    cdef Py_ssize_t m = tails.shape[0]
    cdef Py_ssize_t e, i, j
    cdef uint64_t mask, nmask = (<uint64_t>1) << m
    cdef uint64_t bits, new
    cdef bint changed
    cdef num_t w
    dtype = np.int64 if num_t is int64_t else np.float64
    acc_arr = np.zeros((n, n), dtype=dtype)
    cdef num_t[:, ::1] acc = acc_arr
    cdef uint64_t[::1] src = np.zeros(max(n, 1), dtype=np.uint64)

    with nogil:
        mask = 0
        while mask < nmask:
            w = 1
            for e in range(m):
                if (mask >> e) & 1:
                    w = w * up[e]
                else:
                    w = w * down[e]
            for i in range(n):
                src[i] = (<uint64_t>1) << i
            changed = True
            while changed:
                changed = False
                for e in range(m):
                    if (mask >> e) & 1:
                        new = src[heads[e]] | src[tails[e]]
                        if new != src[heads[e]]:
                            src[heads[e]] = new
                            changed = True
            for j in range(n):
                bits = src[j]
                for i in range(n):
                    if (bits >> i) & 1:
                        acc[i, j] += w
            mask += 1
    return acc_arr


def path_sums(Py_ssize_t n, const int64_t[::1] tails, const int64_t[::1] heads,
              const num_t[::1] weights, num_t unit):
    cdef Py_ssize_t m = tails.shape[0]
    cdef Py_ssize_t a, v, s, h, depth
    dtype = np.int64 if num_t is int64_t else np.float64

    start_arr = np.zeros(n + 1, dtype=np.int64)
    cdef int64_t[::1] start = start_arr
    for a in range(m):
        start[tails[a] + 1] += 1
    for v in range(n):
        start[v + 1] += start[v]
    opts_arr = np.zeros(max(m, 1), dtype=np.int64)
    cdef int64_t[::1] opts = opts_arr
    fill_arr = start_arr[:n].copy()
    cdef int64_t[::1] fill = fill_arr
    for a in range(m):
        opts[fill[tails[a]]] = a
        fill[tails[a]] += 1

    acc_arr = np.zeros((n, n, n), dtype=dtype)
    cdef num_t[:, :, ::1] acc = acc_arr
    powers_arr = np.ones(n + 1, dtype=dtype)
    cdef num_t[::1] powers = powers_arr
    for v in range(1, n + 1):
        powers[v] = powers[v - 1] * unit

    cdef int64_t[::1] on_path = np.zeros(n, dtype=np.int64)
    cdef int64_t[::1] st_v = np.zeros(n + 1, dtype=np.int64)
    cdef int64_t[::1] st_pos = np.zeros(n + 1, dtype=np.int64)
    w_arr = np.zeros(n + 1, dtype=dtype)
    cdef num_t[::1] st_w = w_arr
    cdef Py_ssize_t top

    with nogil:
        for s in range(n):
            on_path[s] = 1
            top = 0
            st_v[0] = s
            st_pos[0] = start[s]
            st_w[0] = 1
            acc[s, s, 0] += powers[n - 1]
            while top >= 0:
                v = st_v[top]
                if st_pos[top] == start[v + 1]:
                    on_path[v] = 0
                    top -= 1
                    continue
                a = opts[st_pos[top]]
                st_pos[top] += 1
                h = heads[a]
                if on_path[h]:
                    continue
                depth = top + 1
                acc[s, h, depth] += st_w[top] * weights[a] * powers[n - 1 - depth]
                on_path[h] = 1
                top = depth
                st_v[top] = h
                st_pos[top] = start[h]
                st_w[top] = st_w[top - 1] * weights[a]
    return acc_arr
