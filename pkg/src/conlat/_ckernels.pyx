# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled closure kernels; see ``_kernels_py`` for the reference versions."""

import numpy as np


cdef inline int _find(int[::1] parent, int x) noexcept nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


cdef tuple _canonical(int[::1] parent, int n):
    cdef int[::1] ids = np.full(n, -1, dtype=np.int32)
    cdef int x, r, nxt = 0
    out = [0] * n
    for x in range(n):
        r = _find(parent, x)
        if ids[r] < 0:
            ids[r] = nxt
            nxt += 1
        out[x] = ids[r]
    return tuple(out)


def congruence_closure(const int[:, ::1] join, const int[:, ::1] meet, pairs, init=None):
    cdef int n = join.shape[0]
    cdef int[::1] parent = np.arange(n, dtype=np.int32)
    cdef int x, y, rx, ry, c, top = 0
    cdef Py_ssize_t cap
    cdef int[::1] rep
    if init is not None:
        rep = np.full(n, -1, dtype=np.int32)
        for x in range(n):
            c = init[x]
            if rep[c] < 0:
                rep[c] = x
            parent[x] = rep[c]
    pair_list = [(a, b) for a, b in pairs if a != b]
    # each effective merge pushes at most 2n pairs; at most n - 1 merges
    cap = 2 * (len(pair_list) + 2 * n * n + 2)
    cdef int[::1] stack = np.empty(cap, dtype=np.int32)
    for a, b in pair_list:
        stack[top] = a
        stack[top + 1] = b
        top += 2
    with nogil:
        while top > 0:
            top -= 2
            x = stack[top]
            y = stack[top + 1]
            rx = _find(parent, x)
            ry = _find(parent, y)
            if rx == ry:
                continue
            if rx < ry:
                parent[ry] = rx
            else:
                parent[rx] = ry
            for c in range(n):
                if join[x, c] != join[y, c]:
                    stack[top] = join[x, c]
                    stack[top + 1] = join[y, c]
                    top += 2
                if meet[x, c] != meet[y, c]:
                    stack[top] = meet[x, c]
                    stack[top + 1] = meet[y, c]
                    top += 2
    return _canonical(parent, n)


def sublattice_closure(const int[:, ::1] join, const int[:, ::1] meet, gens):
    cdef int n = join.shape[0]
    cdef unsigned char[::1] member = np.zeros(n, dtype=np.uint8)
    cdef int[::1] order = np.empty(n, dtype=np.int32)
    cdef int[::1] queue = np.empty(n, dtype=np.int32)
    cdef int count = 0, qtop = 0, x, y, z, i, k, snapshot
    for g in gens:
        x = g
        if not member[x]:
            member[x] = 1
            order[count] = x
            count += 1
            queue[qtop] = x
            qtop += 1
    with nogil:
        while qtop > 0:
            qtop -= 1
            x = queue[qtop]
            snapshot = count
            for i in range(snapshot):
                y = order[i]
                for k in range(2):
                    z = join[x, y] if k == 0 else meet[x, y]
                    if not member[z]:
                        member[z] = 1
                        order[count] = z
                        count += 1
                        queue[qtop] = z
                        qtop += 1
    return [x for x in range(n) if member[x]]


def join_closure(const int[:, ::1] join, gens, int zero):
    cdef int n = join.shape[0]
    cdef unsigned char[::1] member = np.zeros(n, dtype=np.uint8)
    cdef int[::1] order = np.empty(n, dtype=np.int32)
    cdef int[::1] queue = np.empty(n, dtype=np.int32)
    cdef int count = 0, qtop = 0, x, y, z, i, snapshot
    for g in [zero, *gens]:
        x = g
        if not member[x]:
            member[x] = 1
            order[count] = x
            count += 1
            queue[qtop] = x
            qtop += 1
    with nogil:
        while qtop > 0:
            qtop -= 1
            x = queue[qtop]
            snapshot = count
            for i in range(snapshot):
                y = order[i]
                z = join[x, y]
                if not member[z]:
                    member[z] = 1
                    order[count] = z
                    count += 1
                    queue[qtop] = z
                    qtop += 1
    return [x for x in range(n) if member[x]]
