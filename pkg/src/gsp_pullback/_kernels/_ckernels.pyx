# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integer kernels.

q_table: counts of multisets of roots e_i + e_j (i <= j) summing to each
weight in a box, flattened in C order.
count_symplectic_mod_p: brute-force count of g with g^t J g = J over F_p.
"""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()


def q_table(int n, bounds):
    cdef Py_ssize_t k, i, j, x, size = 1
    cdef Py_ssize_t off
    cdef cnp.ndarray[cnp.int64_t, ndim=1] b = np.asarray(bounds, dtype=np.int64)
    if b.shape[0] != n:
        raise ValueError("bounds must have length n")
    cdef cnp.ndarray[cnp.int64_t, ndim=1] stride = np.zeros(n, dtype=np.int64)
    for k in range(n - 1, -1, -1):
        stride[k] = size
        size *= b[k] + 1
    cdef cnp.ndarray[cnp.int64_t, ndim=1] tab = np.zeros(size, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] coord = np.zeros(n, dtype=np.int64)
    cdef int64_t[:] t = tab
    cdef int64_t[:] c = coord
    cdef int64_t[:] bb = b
    t[0] = 1
    for i in range(n):
        for j in range(i, n):
            off = stride[i] + stride[j]
            for k in range(n):
                c[k] = 0
            for x in range(size):
                if i == j:
                    if c[i] >= 2:
                        t[x] += t[x - off]
                elif c[i] >= 1 and c[j] >= 1:
                    t[x] += t[x - off]
                # advance the odometer
                k = n - 1
                while k >= 0:
                    c[k] += 1
                    if c[k] <= bb[k]:
                        break
                    c[k] = 0
                    k -= 1
    shape = []
    for k in range(n):
        shape.append(int(bb[k]) + 1)
    return tab.reshape(tuple(shape))


def count_symplectic_mod_p(int n, int p):
    cdef int N = 2 * n
    cdef int64_t total = 0
    cdef Py_ssize_t cells = N * N
    cdef int64_t idx, limit = 1, rem
    cdef int a, r, s, col
    cdef int g[64]
    cdef int ok
    cdef int64_t acc, want
    if N * N > 64:
        raise ValueError("matrix too large for brute force")
    for a in range(cells):
        limit *= p
    for idx in range(limit):
        rem = idx
        for a in range(cells):
            g[a] = rem % p
            rem //= p
        ok = 1
        # (g^t J g)_{rs} = sum_k g[k][r] g[k+n][s] - g[k+n][r] g[k][s]
        for r in range(N):
            for s in range(r + 1, N):
                acc = 0
                for col in range(n):
                    acc += g[col * N + r] * g[(col + n) * N + s] - g[(col + n) * N + r] * g[col * N + s]
                want = 1 if (s == r + n) else 0
                if (acc - want) % p != 0:
                    ok = 0
                    break
            if not ok:
                break
        if ok:
            total += 1
    return int(total)
