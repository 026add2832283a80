# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels over integer rank/weight arrays.

Mirrors _kernels_py exactly; inputs are Python lists of ints, converted
once to contiguous int64 buffers.
"""

import numpy as np

cimport numpy as cnp


def crossing_arcs(tops, bottoms):
    cdef cnp.int64_t[::1] t = np.asarray(tops, dtype=np.int64)
    cdef cnp.int64_t[::1] b = np.asarray(bottoms, dtype=np.int64)
    cdef Py_ssize_t n = t.shape[0]
    cdef Py_ssize_t x, y
    cdef cnp.int64_t tx, bx
    arcs = []
    for x in range(n):
        tx = t[x]
        bx = b[x]
        for y in range(x + 1, n):
            if (tx < t[y]) != (bx < b[y]):
                if bx < b[y]:
                    arcs.append((x, y))
                else:
                    arcs.append((y, x))
    return arcs


def trapezoid_edges(a, b, c, d):
    cdef cnp.int64_t[::1] aa = np.asarray(a, dtype=np.int64)
    cdef cnp.int64_t[::1] bb = np.asarray(b, dtype=np.int64)
    cdef cnp.int64_t[::1] cc = np.asarray(c, dtype=np.int64)
    cdef cnp.int64_t[::1] dd = np.asarray(d, dtype=np.int64)
    cdef Py_ssize_t n = aa.shape[0]
    cdef Py_ssize_t x, y
    edges = []
    for x in range(n):
        for y in range(x + 1, n):
            if not (
                (bb[x] < aa[y] and dd[x] < cc[y])
                or (bb[y] < aa[x] and dd[y] < cc[x])
            ):
                edges.append((x, y))
    return edges


def spfa_longest(n, arc_u, arc_v, arc_w):
    cdef cnp.int64_t[::1] us = np.asarray(arc_u, dtype=np.int64)
    cdef cnp.int64_t[::1] vs = np.asarray(arc_v, dtype=np.int64)
    cdef cnp.int64_t[::1] ws = np.asarray(arc_w, dtype=np.int64)
    cdef Py_ssize_t m = us.shape[0]
    cdef Py_ssize_t nn = n
    cdef Py_ssize_t i, u

    # CSR adjacency
    cdef cnp.int64_t[::1] deg = np.zeros(nn + 1, dtype=np.int64)
    for i in range(m):
        deg[us[i] + 1] += 1
    for i in range(nn):
        deg[i + 1] += deg[i]
    cdef cnp.int64_t[::1] head = np.empty(m, dtype=np.int64)
    cdef cnp.int64_t[::1] wgt = np.empty(m, dtype=np.int64)
    cdef cnp.int64_t[::1] fill = np.asarray(deg[:nn]).copy()
    for i in range(m):
        u = us[i]
        head[fill[u]] = vs[i]
        wgt[fill[u]] = ws[i]
        fill[u] += 1

    cdef cnp.int64_t[::1] dist = np.zeros(nn, dtype=np.int64)
    cdef cnp.int64_t[::1] requeues = np.zeros(nn, dtype=np.int64)
    cdef cnp.uint8_t[::1] in_queue = np.ones(nn, dtype=np.uint8)
    # ring buffer sized for worst-case occupancy (n entries at once)
    cdef cnp.int64_t[::1] ring = np.empty(nn + 1, dtype=np.int64)
    cdef Py_ssize_t qhead = 0, qtail = 0, qcap = nn + 1
    cdef cnp.int64_t du, nd
    cdef Py_ssize_t v, j

    for i in range(nn):
        ring[i] = i
    qtail = nn

    while qhead != qtail:
        u = ring[qhead]
        qhead = (qhead + 1) % qcap
        in_queue[u] = 0
        du = dist[u]
        for j in range(deg[u], deg[u + 1]):
            v = head[j]
            nd = du + wgt[j]
            if nd > dist[v]:
                dist[v] = nd
                if not in_queue[v]:
                    requeues[v] += 1
                    if requeues[v] > nn:
                        return None
                    in_queue[v] = 1
                    ring[qtail] = v
                    qtail = (qtail + 1) % qcap
    return [dist[i] for i in range(nn)]


def nae_smallest(n, clause_bits):
    cdef Py_ssize_t k = len(clause_bits)
    cdef cnp.int64_t[::1] ps = np.empty(k, dtype=np.int64)
    cdef cnp.int64_t[::1] qs = np.empty(k, dtype=np.int64)
    cdef cnp.int64_t[::1] rs = np.empty(k, dtype=np.int64)
    cdef Py_ssize_t i
    for i in range(k):
        ps[i] = clause_bits[i][0]
        qs[i] = clause_bits[i][1]
        rs[i] = clause_bits[i][2]
    cdef unsigned long long a, top = 1ULL << n
    cdef int s
    cdef bint ok
    for a in range(top):
        ok = True
        for i in range(k):
            s = ((a >> ps[i]) & 1) + ((a >> qs[i]) & 1) + ((a >> rs[i]) & 1)
            if s == 0 or s == 3:
                ok = False
                break
        if ok:
            return <long long> a
    return -1
