"""Numpy fallbacks for the compiled kernels (same signatures and results)."""
from __future__ import annotations

import itertools

import numpy as np


def q_table(n: int, bounds) -> np.ndarray:
    b = [int(v) for v in bounds]
    if len(b) != n:
        raise ValueError("bounds must have length n")
    tab = np.zeros([v + 1 for v in b], dtype=np.int64)
    tab[(0,) * n] = 1
    for i in range(n):
        for j in range(i, n):
            # unbounded coin change along the root e_i + e_j: sweep axis i
            step_i = 2 if i == j else 1
            for t in range(step_i, b[i] + 1):
                dst = [slice(None)] * n
                src = [slice(None)] * n
                dst[i] = t
                src[i] = t - step_i
                if i != j:
                    dst[j] = slice(1, None)
                    src[j] = slice(0, -1) if b[j] > 0 else slice(0, 0)
                tab[tuple(dst)] += tab[tuple(src)]
    return tab


def count_symplectic_mod_p(n: int, p: int) -> int:
    N = 2 * n
    J = np.zeros((N, N), dtype=np.int64)
    J[:n, n:] = np.eye(n, dtype=np.int64)
    J[n:, :n] = -np.eye(n, dtype=np.int64)
    total = 0
    # enumerate the first row block by block to bound memory
    cells = N * N
    head = min(cells, 8)
    tail_vals = np.array(list(itertools.product(range(p), repeat=cells - head)), dtype=np.int64)
    if tail_vals.size == 0:
        tail_vals = np.zeros((1, 0), dtype=np.int64)
    for hv in itertools.product(range(p), repeat=head):
        flat = np.concatenate([np.broadcast_to(np.array(hv, dtype=np.int64), (len(tail_vals), head)), tail_vals], axis=1)
        g = flat.reshape(-1, N, N)
        form = np.einsum("bki,kl,blj->bij", g, J, g) % p
        total += int(np.all(form == (J % p), axis=(1, 2)).sum())
    return total
